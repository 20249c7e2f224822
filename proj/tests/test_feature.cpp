#include <cmath>
#include <numeric>

#include "doctest.h"
#include "helpers.hpp"
#include "whmin/feature.hpp"

using namespace whmin;
namespace wt = whmin::testing;

TEST_SUITE("feature") {

TEST_CASE("edge indexing is a bijection") {
  for (int rank : {1, 2, 3, 5}) {
    const EdgeIndexing idx{rank};
    CHECK(idx.edge_count() == rank * (2 * rank - 1));
    int counter = 0;
    for (int p = 0; p < idx.vertex_count(); ++p) {
      for (int q = p + 1; q < idx.vertex_count(); ++q) {
        CHECK(idx.edge_index(p, q) == counter);
        CHECK(idx.edge_index(q, p) == counter);
        CHECK(idx.edge_at(counter) == std::pair{p, q});
        ++counter;
      }
    }
    CHECK(counter == idx.edge_count());
  }
}

TEST_CASE("feature dimension is n(2n-1)") {
  CHECK(feature_dim(2) == 6);
  CHECK(feature_dim(3) == 15);
  CHECK(feature_vector(parse_word("x1 x2", 3)).size() == 15);
}

TEST_CASE("hand-built graphs") {
  SUBCASE("x1 x2 in F2 splits its weight over two edges") {
    const Word u = parse_word("x1 x2", 2);
    const auto g = build_graph(u);
    const EdgeIndexing idx{2};
    // Pairs (x1,x2) and (x2,x1) hit edges {x1, x2^{-1}} and {x2, x1^{-1}}.
    const int e1 = idx.edge_index(vertex_index(1), vertex_index(-2));
    const int e2 = idx.edge_index(vertex_index(2), vertex_index(-1));
    const auto f = graph_features(g);
    for (int e = 0; e < idx.edge_count(); ++e) {
      CHECK(f[static_cast<std::size_t>(e)] ==
            doctest::Approx(e == e1 || e == e2 ? 0.5 : 0.0));
    }
  }
  SUBCASE("the single-letter word wraps onto its own inverse edge") {
    const Word u = parse_word("x1", 2);
    const auto g = build_graph(u);
    const EdgeIndexing idx{2};
    CHECK(g.counts[static_cast<std::size_t>(idx.edge_index(vertex_index(1), vertex_index(-1)))] == 1);
    CHECK(std::accumulate(g.counts.begin(), g.counts.end(), std::int64_t{0}) == 1);
  }
  SUBCASE("x1 x1 puts all weight on {x1, x1^{-1}}") {
    const Word u = parse_word("x1 x1", 2);
    const auto f = feature_vector(u);
    const EdgeIndexing idx{2};
    CHECK(f[static_cast<std::size_t>(idx.edge_index(0, 1))] == doctest::Approx(1.0));
  }
}

TEST_CASE("counts match the brute-force pair scanner and sum to |u|") {
  Rng rng(Seed{31});
  for (int trial = 0; trial < 200; ++trial) {
    const int rank = rng.range_int(2, 4);
    const Word u = random_cyclically_reduced_word(rank, rng.range_int(2, 40), rng);
    const auto g = build_graph(u);
    CHECK(g.counts == wt::naive_edge_counts(u));
    CHECK(std::accumulate(g.counts.begin(), g.counts.end(), std::int64_t{0}) == u.length());
  }
}

TEST_CASE("feature vectors are a unit-L1 distribution for |u| >= 2") {
  Rng rng(Seed{32});
  for (int trial = 0; trial < 100; ++trial) {
    const Word u = random_cyclically_reduced_word(3, rng.range_int(2, 50), rng);
    const auto f = feature_vector(u);
    double sum = 0;
    for (double v : f) {
      CHECK(v >= 0.0);
      CHECK(v <= 1.0);
      sum += v;
    }
    CHECK(sum == doctest::Approx(1.0));
  }
}

TEST_CASE("feature vector is invariant under rotation and inversion") {
  Rng rng(Seed{33});
  for (int trial = 0; trial < 200; ++trial) {
    const int rank = rng.range_int(2, 4);
    const Word u = random_cyclically_reduced_word(rank, rng.range_int(2, 30), rng);
    const auto f = feature_vector(u);
    CHECK(f == feature_vector(wt::rotate(u, rng.below_int(u.length()))));
    CHECK(f == feature_vector(inverse(u)));
  }
}

TEST_CASE("errors and the linear comparison mode") {
  CHECK_THROWS_AS(build_graph(Word(2)), std::invalid_argument);
  const Word u = parse_word("x1 x2 x1 x2", 2);
  const auto cyc = build_graph(u, GraphMode::cyclic);
  const auto lin = build_graph(u, GraphMode::linear);
  CHECK(std::accumulate(cyc.counts.begin(), cyc.counts.end(), std::int64_t{0}) == 4);
  CHECK(std::accumulate(lin.counts.begin(), lin.counts.end(), std::int64_t{0}) == 3);
}

}  // TEST_SUITE

#include "whmin/feature.hpp"

#include <cassert>
#include <cmath>
#include <stdexcept>

namespace whmin {

int EdgeIndexing::edge_index(int v1, int v2) const {
  assert(v1 != v2);
  const int p = v1 < v2 ? v1 : v2;
  const int q = v1 < v2 ? v2 : v1;
  const int m = vertex_count();
  // Pairs with first vertex < p come first, then the offset within p's row.
  return p * (2 * m - p - 1) / 2 + (q - p - 1);
}

std::pair<int, int> EdgeIndexing::edge_at(int index) const {
  const int m = vertex_count();
  int p = 0;
  int row = m - 1;
  while (index >= row) {
    index -= row;
    ++p;
    --row;
  }
  return {p, p + 1 + index};
}

bool EdgeIndexing::same_base(int index) const {
  auto [p, q] = edge_at(index);
  return p / 2 == q / 2;
}

WhiteheadGraph build_graph(const Word& u, GraphMode mode) {
  if (u.empty()) throw std::invalid_argument("build_graph: weights undefined for the empty word");
  if (!u.is_cyclically_reduced()) {
    throw std::invalid_argument("build_graph: word must be cyclically reduced");
  }
  const EdgeIndexing idx{u.rank()};
  WhiteheadGraph g;
  g.rank = u.rank();
  g.total_length = u.length();
  g.counts.assign(static_cast<std::size_t>(idx.edge_count()), 0);
  const auto letters = u.letters();
  const std::size_t n = letters.size();
  const std::size_t pairs = mode == GraphMode::cyclic ? n : n - 1;
  for (std::size_t i = 0; i < pairs; ++i) {
    const Letter a = letters[i];
    const Letter b = letters[(i + 1) % n];
    // b != a^{-1} in a cyclically reduced word, so the endpoints differ.
    const int e = idx.edge_index(vertex_index(a), vertex_index(inverse(b)));
    ++g.counts[static_cast<std::size_t>(e)];
  }
  return g;
}

FeatureVector graph_features(const WhiteheadGraph& g) {
  FeatureVector f(g.counts.size());
  const double denom = static_cast<double>(g.total_length);
  for (std::size_t i = 0; i < g.counts.size(); ++i) {
    f[i] = static_cast<double>(g.counts[i]) / denom;
  }
  return f;
}

FeatureVector feature_vector(const Word& u, GraphMode mode) {
  return graph_features(build_graph(u, mode));
}

double euclidean_distance(const FeatureVector& a, const FeatureVector& b) {
  assert(a.size() == b.size());
  double sum = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double d = a[i] - b[i];
    sum += d * d;
  }
  return std::sqrt(sum);
}

}  // namespace whmin

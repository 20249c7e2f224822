#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "whmin/automorphism.hpp"
#include "whmin/feature.hpp"
#include "whmin/word.hpp"

namespace whmin {

// Counts the basic operations a heuristic performs (letters scanned, edges
// visited, distance multiply-adds); used by the cost-scaling tests.
struct OpCounter {
  std::uint64_t ops = 0;
};

struct OrderedCandidates {
  struct Item {
    NielsenAut aut;
    double score = 0;
    friend bool operator==(const Item&, const Item&) = default;
  };
  std::vector<Item> items;
};

// Decides whether a randomly drawn word may serve as a minimal training base.
using MinimalityOracle = std::function<bool(const Word&)>;

// Mean feature vectors of words reducible by exactly one Nielsen automorphism,
// one per element of enumerate_nielsen(rank).
struct CentroidModel {
  int rank = 0;
  int max_length = 0;  // base-word length ceiling used during training
  std::vector<FeatureVector> centroids;     // by nielsen enumeration index
  std::vector<std::int64_t> sample_counts;  // same indexing
  std::vector<NielsenAut> nielsen;          // cached enumerate_nielsen(rank)
};

struct CentroidTrainOptions {
  int min_length = 10;               // base-word length floor
  std::uint64_t budget_factor = 400; // attempts <= factor * classes * samples_per_class
  bool inflate_nielsen_only = false; // draw the inflating aut from N(X) instead of W(X)
  // In rank 2 the right/left Nielsen pair always reduces together (every F2
  // word is conjugate to its reversal), so no word has exactly one reducer and
  // every class starves. With this flag, classes that the exclusive pass could
  // not fill accept words shared between their reducers instead.
  bool allow_shared_fallback = false;
  // Observes each accepted training word with its class index.
  std::function<void(const Word&, std::size_t)> on_sample;
};

// Enumeration order, score = index; input independent.
OrderedCandidates nielsen_first_order(int rank);

// The two reducers {p -> pq, q -> qp} of the heaviest distinct-base edge.
struct MaxEdgeTop {
  int edge = -1;
  double weight = 0;
  NielsenAut reducers[2];
};
MaxEdgeTop max_edge_top_pair(const Word& u, OpCounter* ops = nullptr);

// All distinct-base edges by decreasing weight (ties by edge index), each
// expanded to its two reducers; score = edge weight.
OrderedCandidates max_edge_order(const Word& u, OpCounter* ops = nullptr);

// Words reducible by exactly one Nielsen automorphism feed that automorphism's
// centroid; bases are drawn up to max_length and inflated by one
// length-increasing Whitehead automorphism.
CentroidModel train_centroids(int rank, int max_length, int samples_per_class, Seed seed,
                              const MinimalityOracle& oracle,
                              const CentroidTrainOptions& options = {});

// N(X) minus `exclude`, sorted by increasing Euclidean distance between f(u)
// and the centroids; ties by enumeration index.
OrderedCandidates centroid_order(const Word& u, const CentroidModel& model,
                                 const std::vector<NielsenAut>& exclude = {},
                                 OpCounter* ops = nullptr);

}  // namespace whmin

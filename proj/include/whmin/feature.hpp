#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "whmin/word.hpp"

namespace whmin {

// Edge weights of the Whitehead graph laid out in EdgeIndexing order.
using FeatureVector = std::vector<double>;

// Number of edges of the complete graph on the 2n signed letters: n(2n-1).
constexpr int feature_dim(int rank) { return rank * (2 * rank - 1); }

// Bijection between unordered vertex pairs {p,q}, p != q, and [0, n(2n-1)).
// Vertices follow the fixed order x1, x1^{-1}, x2, x2^{-1}, ...
struct EdgeIndexing {
  int rank = 0;

  int vertex_count() const { return 2 * rank; }
  int edge_count() const { return feature_dim(rank); }
  int edge_index(int v1, int v2) const;
  std::pair<int, int> edge_at(int index) const;  // (low vertex, high vertex)
  // Edges {x, x^{-1}} have no Nielsen reducer.
  bool same_base(int index) const;
};

// Default counts adjacent pairs cyclically (including the wrap pair); `linear`
// drops the wrap pair and exists for comparison runs only.
enum class GraphMode { cyclic, linear };

struct WhiteheadGraph {
  int rank = 0;
  std::vector<std::int64_t> counts;  // per edge, EdgeIndexing order
  std::int64_t total_length = 0;     // |u|, the weight denominator
};

// Each adjacent pair (a, b) of u increments the edge {a, b^{-1}}. Requires
// |u| >= 1 and u cyclically reduced.
WhiteheadGraph build_graph(const Word& u, GraphMode mode = GraphMode::cyclic);

FeatureVector graph_features(const WhiteheadGraph& g);
FeatureVector feature_vector(const Word& u, GraphMode mode = GraphMode::cyclic);

double euclidean_distance(const FeatureVector& a, const FeatureVector& b);

}  // namespace whmin

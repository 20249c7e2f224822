#include "whmin/heuristics.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "whmin/errors.hpp"

namespace whmin {

namespace {

// The Nielsen automorphism p -> pq on signed letters; undoes subwords counted
// by the edge {p, q}.
NielsenAut edge_reducer(Letter p, Letter q) {
  if (p > 0) return {base_index(p), q, NielsenAut::Side::right};
  // x^{-1} -> x^{-1} q is x -> q^{-1} x.
  return {base_index(p), inverse(q), NielsenAut::Side::left};
}

void bump(OpCounter* ops, std::uint64_t k) {
  if (ops) ops->ops += k;
}

void require_order_input(const Word& u) {
  if (u.length() < 2) {
    throw std::invalid_argument("maximal-edge ordering needs |u| >= 2, got " +
                                std::to_string(u.length()));
  }
}

}  // namespace

OrderedCandidates nielsen_first_order(int rank) {
  OrderedCandidates out;
  const auto nielsen = enumerate_nielsen(rank);
  out.items.reserve(nielsen.size());
  for (std::size_t i = 0; i < nielsen.size(); ++i) {
    out.items.push_back({nielsen[i], static_cast<double>(i)});
  }
  return out;
}

MaxEdgeTop max_edge_top_pair(const Word& u, OpCounter* ops) {
  require_order_input(u);
  const auto g = build_graph(u);
  bump(ops, static_cast<std::uint64_t>(u.length()));
  const EdgeIndexing idx{u.rank()};
  int best = -1;
  std::int64_t best_count = -1;
  for (int e = 0; e < idx.edge_count(); ++e) {
    bump(ops, 1);
    if (idx.same_base(e)) continue;
    if (g.counts[static_cast<std::size_t>(e)] > best_count) {
      best = e;
      best_count = g.counts[static_cast<std::size_t>(e)];
    }
  }
  auto [pv, qv] = idx.edge_at(best);
  const Letter p = letter_at_vertex(pv);
  const Letter q = letter_at_vertex(qv);
  MaxEdgeTop top;
  top.edge = best;
  top.weight = static_cast<double>(best_count) / static_cast<double>(g.total_length);
  top.reducers[0] = edge_reducer(p, q);
  top.reducers[1] = edge_reducer(q, p);
  return top;
}

OrderedCandidates max_edge_order(const Word& u, OpCounter* ops) {
  require_order_input(u);
  const auto g = build_graph(u);
  bump(ops, static_cast<std::uint64_t>(u.length()));
  const EdgeIndexing idx{u.rank()};
  std::vector<int> edges;
  edges.reserve(g.counts.size());
  for (int e = 0; e < idx.edge_count(); ++e) {
    bump(ops, 1);
    if (!idx.same_base(e)) edges.push_back(e);
  }
  std::stable_sort(edges.begin(), edges.end(), [&](int a, int b) {
    return g.counts[static_cast<std::size_t>(a)] > g.counts[static_cast<std::size_t>(b)];
  });
  OrderedCandidates out;
  out.items.reserve(2 * edges.size());
  std::vector<bool> seen(nielsen_count(u.rank()), false);
  for (int e : edges) {
    auto [pv, qv] = idx.edge_at(e);
    const Letter p = letter_at_vertex(pv);
    const Letter q = letter_at_vertex(qv);
    const double w = static_cast<double>(g.counts[static_cast<std::size_t>(e)]) /
                     static_cast<double>(g.total_length);
    for (const NielsenAut& t : {edge_reducer(p, q), edge_reducer(q, p)}) {
      bump(ops, 1);
      const auto k = nielsen_enum_index(t, u.rank());
      if (seen[k]) continue;
      seen[k] = true;
      out.items.push_back({t, w});
    }
  }
  return out;
}

CentroidModel train_centroids(int rank, int max_length, int samples_per_class, Seed seed,
                              const MinimalityOracle& oracle,
                              const CentroidTrainOptions& options) {
  if (samples_per_class < 50) {
    throw std::invalid_argument("train_centroids: samples_per_class must be >= 50");
  }
  if (!oracle) throw std::invalid_argument("train_centroids: a minimality oracle is required");
  const int len_min = std::max(2, options.min_length);
  if (max_length < len_min) {
    throw std::invalid_argument("train_centroids: max_length below the minimum base length");
  }

  CentroidModel model;
  model.rank = rank;
  model.max_length = max_length;
  model.nielsen = enumerate_nielsen(rank);
  const std::size_t classes = model.nielsen.size();
  const int d = feature_dim(rank);
  std::vector<FeatureVector> sums(classes, FeatureVector(static_cast<std::size_t>(d), 0.0));
  model.sample_counts.assign(classes, 0);

  Rng rng(seed);
  std::size_t full = 0;
  const std::uint64_t budget =
      options.budget_factor * classes * static_cast<std::uint64_t>(samples_per_class);
  std::vector<NielsenAut> nielsen_pool;
  if (options.inflate_nielsen_only) nielsen_pool = model.nielsen;

  auto next_inflated = [&]() -> std::optional<Word> {
    const int len = rng.range_int(len_min, max_length);
    Word base = random_cyclically_reduced_word(rank, len, rng);
    if (!oracle(base)) return std::nullopt;
    if (options.inflate_nielsen_only) {
      for (int tries = 0; tries < 200; ++tries) {
        const auto& t = nielsen_pool[rng.below(nielsen_pool.size())];
        Word image = t.apply(base);
        if (image.length() > base.length()) return image;
      }
      return std::nullopt;
    }
    auto inflated = try_inflate_once(base, rng);
    if (!inflated) return std::nullopt;  // some words cannot be lengthened
    return std::move(inflated->second);
  };

  std::vector<std::size_t> reducers;
  auto find_reducers = [&](const Word& w) {
    reducers.clear();
    for (std::size_t k = 0; k < classes; ++k) {
      if (model.nielsen[k].apply(w).length() < w.length()) reducers.push_back(k);
    }
  };
  auto add_sample = [&](const Word& w, const FeatureVector& f, std::size_t k) {
    if (options.on_sample) options.on_sample(w, k);
    auto& sum = sums[k];
    for (int i = 0; i < d; ++i) sum[static_cast<std::size_t>(i)] += f[static_cast<std::size_t>(i)];
    if (++model.sample_counts[k] == samples_per_class) ++full;
  };

  // Primary pass: only words reduced by exactly one Nielsen automorphism.
  for (std::uint64_t attempt = 0; attempt < budget && full < classes; ++attempt) {
    const auto w = next_inflated();
    if (!w) continue;
    find_reducers(*w);
    if (reducers.size() != 1) continue;
    const std::size_t k = reducers.front();
    if (model.sample_counts[k] >= samples_per_class) continue;
    add_sample(*w, feature_vector(*w), k);
  }

  // Fallback pass: starved classes accept words shared between reducers.
  if (full < classes && options.allow_shared_fallback) {
    for (std::uint64_t attempt = 0; attempt < budget && full < classes; ++attempt) {
      const auto w = next_inflated();
      if (!w) continue;
      find_reducers(*w);
      FeatureVector f;
      for (std::size_t k : reducers) {
        if (model.sample_counts[k] >= samples_per_class) continue;
        if (f.empty()) f = feature_vector(*w);
        add_sample(*w, f, k);
      }
    }
  }

  if (full < classes) {
    std::string starved;
    for (std::size_t k = 0; k < classes; ++k) {
      if (model.sample_counts[k] < samples_per_class) {
        if (!starved.empty()) starved += ", ";
        starved += to_string(model.nielsen[k]) + " (" + std::to_string(model.sample_counts[k]) +
                   "/" + std::to_string(samples_per_class) + ")";
      }
    }
    throw TrainingError("centroid training starved after its generation budget: " + starved);
  }

  model.centroids.resize(classes);
  for (std::size_t k = 0; k < classes; ++k) {
    model.centroids[k] = std::move(sums[k]);
    const double c = static_cast<double>(model.sample_counts[k]);
    for (double& v : model.centroids[k]) v /= c;
  }
  return model;
}

OrderedCandidates centroid_order(const Word& u, const CentroidModel& model,
                                 const std::vector<NielsenAut>& exclude, OpCounter* ops) {
  if (u.rank() != model.rank) {
    throw std::invalid_argument("centroid_order: word rank " + std::to_string(u.rank()) +
                                " does not match model rank " + std::to_string(model.rank));
  }
  const FeatureVector f = feature_vector(u);
  bump(ops, static_cast<std::uint64_t>(u.length() + f.size()));
  OrderedCandidates out;
  out.items.reserve(model.nielsen.size());
  for (std::size_t k = 0; k < model.nielsen.size(); ++k) {
    const auto& t = model.nielsen[k];
    if (std::find(exclude.begin(), exclude.end(), t) != exclude.end()) continue;
    bump(ops, f.size());
    out.items.push_back({t, euclidean_distance(f, model.centroids[k])});
  }
  // Candidates start in enumeration order, so a stable sort keeps ties there.
  std::stable_sort(out.items.begin(), out.items.end(),
                   [](const auto& a, const auto& b) { return a.score < b.score; });
  return out;
}

}  // namespace whmin

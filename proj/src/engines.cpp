#include "whmin/engines.hpp"

#include <algorithm>
#include <limits>
#include <memory>
#include <stdexcept>

#include "whmin/errors.hpp"

namespace whmin {

namespace {

constexpr std::size_t kMaxChromosome = 64;

void require_cyclically_reduced(const Word& u, const char* who) {
  if (!u.is_cyclically_reduced()) {
    throw std::invalid_argument(std::string(who) + ": input must be cyclically reduced");
  }
}

void bump(StepCounter* steps) {
  if (steps) ++steps->total;
}

void report(const ProgressFn& progress, int iter, int len, std::uint64_t steps) {
  if (progress) progress(iter, len, steps);
}

struct Individual {
  AutSequence seq;
  int fitness = std::numeric_limits<int>::max();
  bool evaluated = false;
};

struct ModelRefs {
  const CentroidModel* centroids = nullptr;
  const WminModel* wmin = nullptr;
};

ModelRefs checked_models(const Word& u, const SearchConfig& cfg, bool need_wmin,
                         const char* who) {
  ModelRefs refs;
  refs.centroids = cfg.models.centroids;
  refs.wmin = cfg.models.wmin;
  if (!refs.centroids) {
    throw ConfigError(std::string(who) + ": a centroid model is required");
  }
  if (refs.centroids->rank != u.rank()) {
    throw ConfigError(std::string(who) + ": centroid model rank " +
                      std::to_string(refs.centroids->rank) + " does not match word rank " +
                      std::to_string(u.rank()));
  }
  if (need_wmin) {
    if (!refs.wmin) throw ConfigError(std::string(who) + ": a WMIN model is required");
    if (refs.wmin->rank != u.rank()) {
      throw ConfigError(std::string(who) + ": WMIN model rank " +
                        std::to_string(refs.wmin->rank) + " does not match word rank " +
                        std::to_string(u.rank()));
    }
  }
  return refs;
}

// First-improvement scan over the candidate list; applied automorphisms are
// counted whether or not they reduce.
template <typename Accept>
bool try_candidates(const Word& w, const OrderedCandidates& cands, StepCounter* steps,
                    const Accept& accept) {
  for (const auto& item : cands.items) {
    Word image = item.aut.apply(w);
    bump(steps);
    if (image.length() < w.length()) {
      accept(item.aut, std::move(image));
      return true;
    }
  }
  return false;
}

}  // namespace

std::string to_string(Algorithm a) {
  switch (a) {
    case Algorithm::wr: return "wr";
    case Algorithm::hdwr: return "hdwr";
    case Algorithm::hpwr: return "hpwr";
  }
  return "?";
}

std::string to_string(TerminatedBy t) {
  switch (t) {
    case TerminatedBy::full_sweep: return "full-sweep";
    case TerminatedBy::classifier: return "classifier";
    case TerminatedBy::swr_exhausted: return "swr-exhausted";
  }
  return "?";
}

Algorithm parse_algorithm(std::string_view text) {
  if (text == "wr") return Algorithm::wr;
  if (text == "hdwr") return Algorithm::hdwr;
  if (text == "hpwr") return Algorithm::hpwr;
  throw ParseError("unknown algorithm '" + std::string(text) + "' (expected wr, hdwr or hpwr)");
}

std::optional<std::pair<WhiteheadAut, Word>> wlr(const Word& u,
                                                 std::span<const WhiteheadAut> sweep,
                                                 StepCounter* steps) {
  require_cyclically_reduced(u, "wlr");
  if (u.length() <= 1) return std::nullopt;  // globally minimal, nothing to scan for
  for (const auto& t : sweep) {
    Word image = t.apply(u);
    bump(steps);
    if (image.length() < u.length()) return std::make_pair(t, std::move(image));
  }
  return std::nullopt;
}

std::optional<std::pair<WhiteheadAut, Word>> wlr(const Word& u) {
  if (u.rank() < 2 || u.length() <= 1) return std::nullopt;
  const auto sweep = enumerate_whitehead(u.rank());
  return wlr(u, sweep);
}

ReductionResult wr(const Word& u, const ProgressFn& progress) {
  require_cyclically_reduced(u, "wr");
  ReductionResult res;
  res.output = u;
  res.terminated_by = TerminatedBy::full_sweep;
  StepCounter steps;
  if (u.rank() >= 2 && u.length() > 1) {
    const auto sweep = enumerate_whitehead(u.rank());
    int iter = 0;
    for (;;) {
      report(progress, iter++, res.output.length(), steps.total);
      auto hit = wlr(res.output, sweep, &steps);
      if (!hit) break;
      res.applied.push_back(hit->first);
      res.output = std::move(hit->second);
    }
  }
  res.steps_total = steps.total;
  res.steps_reducing = res.applied.size();
  return res;
}

std::optional<SwrSuccess> swr(const Word& u, const GaConfig& cfg, Seed seed,
                              StepCounter* steps) {
  require_cyclically_reduced(u, "swr");
  if (u.length() < 2) return std::nullopt;
  if (cfg.population < cfg.elite + 2) {
    throw std::invalid_argument("swr: population must be >= elite + 2");
  }
  if (cfg.tournament < 1 || cfg.elite < 0 || cfg.generations < 0 ||
      cfg.init_len_min < 1 || cfg.init_len_max < cfg.init_len_min ||
      cfg.p_mutate < 0 || cfg.p_mutate > 1 || cfg.p_crossover < 0 || cfg.p_crossover > 1) {
    throw std::invalid_argument("swr: bad genetic-search configuration");
  }

  Rng rng(seed);
  const int rank = u.rank();
  const int target = u.length();
  std::optional<SwrSuccess> success;

  // Applies the genes one by one; any prefix that already beats |u| wins.
  auto evaluate = [&](const AutSequence& seq) -> int {
    Word w = u;
    for (std::size_t i = 0; i < seq.size(); ++i) {
      w = seq[i].apply(w);
      bump(steps);
      if (w.length() < target) {
        success = SwrSuccess{AutSequence(seq.begin(), seq.begin() + static_cast<std::ptrdiff_t>(i + 1)),
                             std::move(w)};
        return 0;
      }
    }
    return w.length();
  };

  std::vector<Individual> pop(static_cast<std::size_t>(cfg.population));
  for (auto& ind : pop) {
    const int len = rng.range_int(cfg.init_len_min, cfg.init_len_max);
    ind.seq.reserve(static_cast<std::size_t>(len));
    for (int i = 0; i < len; ++i) ind.seq.push_back(random_whitehead(rank, rng));
  }

  auto tournament = [&]() -> const Individual& {
    std::size_t best = rng.below(pop.size());
    for (int i = 1; i < cfg.tournament; ++i) {
      const std::size_t k = rng.below(pop.size());
      if (pop[k].fitness < pop[best].fitness ||
          (pop[k].fitness == pop[best].fitness && k < best)) {
        best = k;
      }
    }
    return pop[best];
  };

  auto mutate = [&](AutSequence& seq) {
    const int op = rng.below_int(3);
    if (op == 0 && seq.size() < kMaxChromosome) {
      seq.push_back(random_whitehead(rank, rng));
    } else if (op == 2 && seq.size() >= 2) {
      seq.erase(seq.begin() + static_cast<std::ptrdiff_t>(rng.below(seq.size())));
    } else {
      seq[rng.below(seq.size())] = random_whitehead(rank, rng);
    }
  };

  for (int gen = 0;; ++gen) {
    for (auto& ind : pop) {
      if (ind.evaluated) continue;
      ind.fitness = evaluate(ind.seq);
      ind.evaluated = true;
      if (success) return success;
    }
    if (gen == cfg.generations) break;

    std::vector<std::size_t> order(pop.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return pop[a].fitness < pop[b].fitness; });
    std::vector<Individual> next;
    next.reserve(pop.size());
    for (int e = 0; e < cfg.elite; ++e) next.push_back(pop[order[static_cast<std::size_t>(e)]]);
    while (next.size() < pop.size()) {
      const Individual& p1 = tournament();
      AutSequence child;
      if (rng.unit() < cfg.p_crossover) {
        const Individual& p2 = tournament();
        const std::size_t cut1 = rng.below(p1.seq.size() + 1);
        const std::size_t cut2 = rng.below(p2.seq.size() + 1);
        child.assign(p1.seq.begin(), p1.seq.begin() + static_cast<std::ptrdiff_t>(cut1));
        child.insert(child.end(), p2.seq.begin() + static_cast<std::ptrdiff_t>(cut2),
                     p2.seq.end());
        if (child.size() > kMaxChromosome) {
          child.erase(child.begin() + kMaxChromosome, child.end());
        }
      } else {
        child = p1.seq;
      }
      if (rng.unit() < cfg.p_mutate && !child.empty()) mutate(child);
      if (child.empty()) child.push_back(random_whitehead(rank, rng));
      next.push_back({std::move(child), 0, false});
    }
    pop = std::move(next);
  }
  return std::nullopt;
}

namespace {

// Shared driver for both hybrid algorithms. The loop repeatedly solves the
// length reduction problem for the current word; `probabilistic` selects the
// Figure-2 control flow (classifier decision terminal, no sweep).
ReductionResult run_hybrid(const Word& u, const SearchConfig& cfg, bool probabilistic) {
  const char* who = probabilistic ? "hpwr" : "hdwr";
  require_cyclically_reduced(u, who);
  const bool gate = !probabilistic && cfg.wmin_gate_in_hdwr;
  const ModelRefs models = checked_models(u, cfg, probabilistic || gate, who);
  const bool use_swr = probabilistic || cfg.enable_swr_in_hdwr.value_or(u.rank() >= 6);

  ReductionResult res;
  res.output = u;
  StepCounter steps;
  Rng swr_seeds(cfg.seed);
  std::vector<WhiteheadAut> sweep;  // materialized on first use only

  auto accept = [&](const WhiteheadAut& t, Word&& image) {
    res.applied.push_back(t);
    res.output = std::move(image);
  };
  auto accept_nielsen = [&](const NielsenAut& t, Word&& image) {
    accept(to_whitehead(t, u.rank()), std::move(image));
  };

  int iter = 0;
  for (;;) {
    report(cfg.progress, iter++, res.output.length(), steps.total);
    const Word& w = res.output;
    if (w.length() <= 1) {
      // Single letters and the identity are globally minimal; no sweep or
      // classifier call is needed to certify them.
      res.terminated_by = probabilistic ? TerminatedBy::classifier : TerminatedBy::full_sweep;
      break;
    }
    bool reduced = false;

    bool run_fast = true;
    if (gate && decide(*models.wmin, w) == Decision::minimal) run_fast = false;

    std::vector<NielsenAut> tried;
    if (run_fast) {
      // Fast check 1: the two reducers of the maximal-weight edge.
      const MaxEdgeTop top = max_edge_top_pair(w);
      tried.assign(top.reducers, top.reducers + 2);
      for (const NielsenAut& t : tried) {
        Word image = t.apply(w);
        bump(&steps);
        if (image.length() < w.length()) {
          accept_nielsen(t, std::move(image));
          reduced = true;
          break;
        }
      }
      // Fast check 2: remaining Nielsen automorphisms in centroid order.
      if (!reduced) {
        const auto order = centroid_order(w, *models.centroids, tried);
        reduced = try_candidates(w, order, &steps, accept_nielsen);
      }
    }

    if (!reduced && probabilistic) {
      // The classifier decision is terminal; there is no backtracking.
      if (decide(*models.wmin, w) == Decision::minimal) {
        res.terminated_by = TerminatedBy::classifier;
        break;
      }
    }

    if (!reduced && run_fast && use_swr) {
      auto hit = swr(w, cfg.swr, Seed{swr_seeds.next()}, &steps);
      if (hit) {
        for (auto& t : hit->seq) res.applied.push_back(std::move(t));
        res.output = std::move(hit->image);
        reduced = true;
      } else if (probabilistic) {
        res.terminated_by = TerminatedBy::swr_exhausted;
        break;
      }
    }

    if (!reduced && !probabilistic) {
      // The certifying arbiter: a first-improvement sweep over all of W(X).
      if (sweep.empty()) sweep = enumerate_whitehead(u.rank());
      auto hit = wlr(w, sweep, &steps);
      if (hit) {
        accept(hit->first, std::move(hit->second));
        reduced = true;
      } else {
        res.terminated_by = TerminatedBy::full_sweep;
        break;
      }
    }

    if (!reduced) {
      // Probabilistic path with SWR unavailable for this word.
      res.terminated_by = TerminatedBy::swr_exhausted;
      break;
    }
  }

  res.steps_total = steps.total;
  res.steps_reducing = res.applied.size();
  return res;
}

}  // namespace

ReductionResult hdwr(const Word& u, const SearchConfig& cfg) { return run_hybrid(u, cfg, false); }

ReductionResult hpwr(const Word& u, const SearchConfig& cfg) { return run_hybrid(u, cfg, true); }

ReductionResult reduce_word(const Word& u, const SearchConfig& cfg) {
  switch (cfg.algorithm) {
    case Algorithm::wr: return wr(u, cfg.progress);
    case Algorithm::hdwr: return hdwr(u, cfg);
    case Algorithm::hpwr: return hpwr(u, cfg);
  }
  throw std::invalid_argument("reduce_word: unknown algorithm");
}

MinimalityOracle wr_minimality_oracle(int rank) {
  auto sweep = std::make_shared<std::vector<WhiteheadAut>>(enumerate_whitehead(rank));
  return [sweep](const Word& w) { return !wlr(w, *sweep).has_value(); };
}

MinimalityOracle assume_minimal_oracle() {
  return [](const Word&) { return true; };
}

MinimalityOracle default_minimality_oracle(int rank, bool force_certify) {
  if (rank <= 4 || force_certify) return wr_minimality_oracle(rank);
  return assume_minimal_oracle();
}

}  // namespace whmin

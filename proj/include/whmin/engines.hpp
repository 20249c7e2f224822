#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>

#include "whmin/automorphism.hpp"
#include "whmin/classifier.hpp"
#include "whmin/heuristics.hpp"
#include "whmin/word.hpp"

namespace whmin {

enum class Algorithm { wr, hdwr, hpwr };

// Every increment is one application of a Whitehead automorphism to a word
// (the elementary step of the step-count metrics).
struct StepCounter {
  std::uint64_t total = 0;
};

// Genetic search over automorphism sequences. Parameter defaults are the
// library's own; everything is config-exposed.
struct GaConfig {
  int population = 30;
  int generations = 100;
  int tournament = 3;
  int elite = 2;
  double p_mutate = 0.6;
  double p_crossover = 0.4;
  int init_len_min = 1;
  int init_len_max = 3;
};

struct Models {
  const CentroidModel* centroids = nullptr;
  const WminModel* wmin = nullptr;
};

// Called once per engine iteration with (iteration, current length, steps so far).
using ProgressFn = std::function<void(int, int, std::uint64_t)>;

struct SearchConfig {
  Algorithm algorithm = Algorithm::wr;
  GaConfig swr;
  // Unset means the default: SWR inside HDWR only from rank 6 up.
  std::optional<bool> enable_swr_in_hdwr;
  bool wmin_gate_in_hdwr = true;
  Models models;
  Seed seed;
  ProgressFn progress;
};

enum class TerminatedBy { full_sweep, classifier, swr_exhausted };

std::string to_string(Algorithm a);
std::string to_string(TerminatedBy t);
Algorithm parse_algorithm(std::string_view text);

struct ReductionResult {
  Word output;
  AutSequence applied;  // accepted steps; replaying them on the input gives output
  std::uint64_t steps_total = 0;
  std::uint64_t steps_reducing = 0;
  TerminatedBy terminated_by = TerminatedBy::full_sweep;
};

// One first-improvement pass over enumerate_whitehead; empty when u is minimal.
std::optional<std::pair<WhiteheadAut, Word>> wlr(const Word& u);
std::optional<std::pair<WhiteheadAut, Word>> wlr(const Word& u,
                                                 std::span<const WhiteheadAut> sweep,
                                                 StepCounter* steps = nullptr);

// Iterated WLR; the output carries a full-sweep minimality certificate.
ReductionResult wr(const Word& u, const ProgressFn& progress = {});

struct SwrSuccess {
  AutSequence seq;  // shortest reducing prefix of the winning chromosome
  Word image;
};

// Genetic search for any sequence with |u mu| < |u|; empty after the
// generation budget runs out.
std::optional<SwrSuccess> swr(const Word& u, const GaConfig& cfg, Seed seed,
                              StepCounter* steps = nullptr);

// Deterministic hybrid: classifier-gated fast checks (maximal edge, centroid,
// optional SWR) with a certifying full sweep as the arbiter.
ReductionResult hdwr(const Word& u, const SearchConfig& cfg);

// Probabilistic hybrid: fast checks, then the classifier decision is terminal;
// never sweeps W(X), so the output is not certified.
ReductionResult hpwr(const Word& u, const SearchConfig& cfg);

ReductionResult reduce_word(const Word& u, const SearchConfig& cfg);

// Accepts words with no length-reducing Whitehead automorphism. Certification
// cost is a full W(X) sweep per query.
MinimalityOracle wr_minimality_oracle(int rank);
// Treats every cyclically reduced word as minimal.
MinimalityOracle assume_minimal_oracle();
// Certifying oracle for rank <= 4 (or when forced), assume-minimal otherwise.
MinimalityOracle default_minimality_oracle(int rank, bool force_certify = false);

}  // namespace whmin

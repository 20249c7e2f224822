#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "whmin/dataset.hpp"
#include "whmin/engines.hpp"

namespace whmin {

struct RunRecord {
  int word_id = 0;
  Algorithm algo = Algorithm::wr;
  int input_len = 0;
  int output_len = 0;
  std::uint64_t steps_total = 0;
  std::uint64_t steps_reducing = 0;
  double time_ms = 0;
  std::optional<bool> correct;  // only when the oracle length is known
};

struct AggregateMetrics {
  Algorithm algo = Algorithm::wr;
  int count = 0;
  double ns_mean = 0, ns_std = 0;      // steps_total
  double nred_mean = 0, nred_std = 0;  // steps_reducing
  double t_mean = 0, t_std = 0;        // milliseconds
  std::optional<double> error_rate;    // fraction of incorrect outputs
  int oracle_count = 0;
};

struct ExperimentResult {
  std::vector<RunRecord> records;            // sorted by (algo, word_id)
  std::vector<AggregateMetrics> metrics;     // one row per algorithm
};

struct EngineSetup {
  Models models;
  GaConfig swr;
  std::optional<bool> enable_swr_in_hdwr;
  bool wmin_gate_in_hdwr = true;
};

// Runs every algorithm on every word with a per-word derived seed; records are
// identical for any job count apart from the wall-time fields.
ExperimentResult run_experiment(const std::vector<LabeledWord>& dataset,
                                const std::vector<Algorithm>& algorithms,
                                const EngineSetup& setup, Seed seed, int jobs = 1);

AggregateMetrics aggregate_records(std::span<const RunRecord> records, Algorithm algo);

enum class Heuristic { nielsen_first, max_edge, centroid };

std::string to_string(Heuristic h);
Heuristic parse_heuristic(std::string_view text);

struct PercentileReport {
  int percentile = 0;   // nearest-rank q-th percentile of first-reducer indices
  int counted = 0;      // words with at least one Nielsen reducer
  int excluded = 0;     // words with none
};

// Words must be non-minimal; the centroid model is required for
// Heuristic::centroid only.
PercentileReport percentile_report(std::span<const Word> words, Heuristic heuristic,
                                   const CentroidModel* model, int q);

// CSV header: word_id,algo,input_len,output_len,steps_total,steps_reducing,time_ms,correct
void write_records_csv(const std::filesystem::path& path, std::span<const RunRecord> records);
std::vector<RunRecord> read_records_csv(const std::filesystem::path& path);
std::string records_to_csv(std::span<const RunRecord> records);

// Aligned table in the style of the step-count comparison tables, plus a CSV twin.
std::string summary_table(std::span<const AggregateMetrics> metrics);
std::string summary_csv(std::span<const AggregateMetrics> metrics);
void write_summary(const std::filesystem::path& txt_path,
                   const std::filesystem::path& csv_path,
                   std::span<const AggregateMetrics> metrics);

}  // namespace whmin

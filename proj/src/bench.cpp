#include "whmin/bench.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <sstream>
#include <thread>

#include "whmin/errors.hpp"

namespace whmin {

namespace {

double sample_std(double sum, double sum_sq, int n) {
  if (n < 2) return 0.0;
  const double mean = sum / n;
  const double var = (sum_sq - n * mean * mean) / (n - 1);
  return var > 0 ? std::sqrt(var) : 0.0;
}

std::string format_ms(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", ms);
  return buf;
}

void parallel_indexed(int count, int jobs, const std::function<void(int)>& fn) {
  jobs = std::max(1, jobs);
  if (jobs == 1 || count <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> cursor{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto worker = [&]() {
    for (;;) {
      const int i = cursor.fetch_add(1);
      if (i >= count) return;
      try {
        fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        return;
      }
    }
  };
  std::vector<std::thread> pool;
  const int workers = std::min(jobs, count);
  pool.reserve(static_cast<std::size_t>(workers));
  for (int j = 0; j < workers; ++j) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace

std::string to_string(Heuristic h) {
  switch (h) {
    case Heuristic::nielsen_first: return "nielsen-first";
    case Heuristic::max_edge: return "max-edge";
    case Heuristic::centroid: return "centroid";
  }
  return "?";
}

Heuristic parse_heuristic(std::string_view text) {
  if (text == "nielsen-first") return Heuristic::nielsen_first;
  if (text == "max-edge") return Heuristic::max_edge;
  if (text == "centroid") return Heuristic::centroid;
  throw ParseError("unknown heuristic '" + std::string(text) +
                   "' (expected nielsen-first, max-edge or centroid)");
}

AggregateMetrics aggregate_records(std::span<const RunRecord> records, Algorithm algo) {
  AggregateMetrics m;
  m.algo = algo;
  double ns = 0, ns2 = 0, nr = 0, nr2 = 0, t = 0, t2 = 0;
  int wrong = 0;
  for (const auto& r : records) {
    if (r.algo != algo) continue;
    ++m.count;
    const auto s = static_cast<double>(r.steps_total);
    const auto red = static_cast<double>(r.steps_reducing);
    ns += s;
    ns2 += s * s;
    nr += red;
    nr2 += red * red;
    t += r.time_ms;
    t2 += r.time_ms * r.time_ms;
    if (r.correct.has_value()) {
      ++m.oracle_count;
      if (!*r.correct) ++wrong;
    }
  }
  if (m.count > 0) {
    m.ns_mean = ns / m.count;
    m.nred_mean = nr / m.count;
    m.t_mean = t / m.count;
    m.ns_std = sample_std(ns, ns2, m.count);
    m.nred_std = sample_std(nr, nr2, m.count);
    m.t_std = sample_std(t, t2, m.count);
  }
  if (m.oracle_count > 0) {
    m.error_rate = static_cast<double>(wrong) / m.oracle_count;
  }
  return m;
}

ExperimentResult run_experiment(const std::vector<LabeledWord>& dataset,
                                const std::vector<Algorithm>& algorithms,
                                const EngineSetup& setup, Seed seed, int jobs) {
  ExperimentResult out;
  const int words = static_cast<int>(dataset.size());
  const int total = words * static_cast<int>(algorithms.size());
  out.records.resize(static_cast<std::size_t>(total));

  parallel_indexed(total, jobs, [&](int slot) {
    const int a = slot / words;
    const int w = slot % words;
    const LabeledWord& lw = dataset[static_cast<std::size_t>(w)];
    SearchConfig cfg;
    cfg.algorithm = algorithms[static_cast<std::size_t>(a)];
    cfg.swr = setup.swr;
    cfg.enable_swr_in_hdwr = setup.enable_swr_in_hdwr;
    cfg.wmin_gate_in_hdwr = setup.wmin_gate_in_hdwr;
    cfg.models = setup.models;
    cfg.seed = derive_seed(seed, static_cast<std::uint64_t>(w));
    const auto start = std::chrono::steady_clock::now();
    const ReductionResult res = reduce_word(lw.word, cfg);
    const auto stop = std::chrono::steady_clock::now();
    RunRecord rec;
    rec.word_id = w;
    rec.algo = cfg.algorithm;
    rec.input_len = lw.word.length();
    rec.output_len = res.output.length();
    rec.steps_total = res.steps_total;
    rec.steps_reducing = res.steps_reducing;
    rec.time_ms = std::chrono::duration<double, std::milli>(stop - start).count();
    if (lw.oracle_min_length) {
      rec.correct = res.output.length() == *lw.oracle_min_length;
    }
    out.records[static_cast<std::size_t>(slot)] = std::move(rec);
  });

  // Slots are laid out algorithm-major, so records are already sorted by
  // (algo order, word_id) independent of the execution schedule.
  out.metrics.reserve(algorithms.size());
  for (Algorithm a : algorithms) {
    out.metrics.push_back(aggregate_records(out.records, a));
  }
  return out;
}

PercentileReport percentile_report(std::span<const Word> words, Heuristic heuristic,
                                   const CentroidModel* model, int q) {
  if (words.empty()) throw std::invalid_argument("percentile_report: empty dataset");
  if (q < 1 || q > 100) throw std::invalid_argument("percentile_report: q must be in [1,100]");
  if (heuristic == Heuristic::centroid && !model) {
    throw ConfigError("percentile_report: the centroid heuristic needs a model");
  }
  PercentileReport rep;
  std::vector<int> indices;
  indices.reserve(words.size());
  for (const Word& w : words) {
    OrderedCandidates order;
    switch (heuristic) {
      case Heuristic::nielsen_first: order = nielsen_first_order(w.rank()); break;
      case Heuristic::max_edge: order = max_edge_order(w); break;
      case Heuristic::centroid: order = centroid_order(w, *model); break;
    }
    int first = 0;  // 1-based position of the first reducing candidate
    for (std::size_t i = 0; i < order.items.size(); ++i) {
      if (order.items[i].aut.apply(w).length() < w.length()) {
        first = static_cast<int>(i) + 1;
        break;
      }
    }
    if (first == 0) {
      ++rep.excluded;  // no Nielsen reducer; counted separately
    } else {
      indices.push_back(first);
    }
  }
  rep.counted = static_cast<int>(indices.size());
  if (indices.empty()) {
    throw Error("percentile_report: no word had a Nielsen reducer");
  }
  std::sort(indices.begin(), indices.end());
  const auto rank_pos = static_cast<std::size_t>(
      std::ceil(static_cast<double>(q) / 100.0 * static_cast<double>(indices.size()) - 1e-9));
  rep.percentile = indices[std::min(indices.size() - 1, std::max<std::size_t>(rank_pos, 1) - 1)];
  return rep;
}

std::string records_to_csv(std::span<const RunRecord> records) {
  std::ostringstream out;
  out << "word_id,algo,input_len,output_len,steps_total,steps_reducing,time_ms,correct\n";
  for (const auto& r : records) {
    out << r.word_id << ',' << to_string(r.algo) << ',' << r.input_len << ',' << r.output_len
        << ',' << r.steps_total << ',' << r.steps_reducing << ',' << format_ms(r.time_ms) << ',';
    if (r.correct.has_value()) out << (*r.correct ? 1 : 0);
    out << '\n';
  }
  return out.str();
}

void write_records_csv(const std::filesystem::path& path, std::span<const RunRecord> records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open results file for writing: " + path.string());
  out << records_to_csv(records);
  if (!out) throw Error("failed writing results file: " + path.string());
}

std::vector<RunRecord> read_records_csv(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open results file: " + path.string());
  std::string line;
  if (!std::getline(in, line)) throw ParseError(path.string() + ": empty results file");
  std::vector<RunRecord> out;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (line.back() == ',') fields.push_back("");
    if (fields.size() != 8) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": expected 8 fields");
    }
    try {
      RunRecord r;
      r.word_id = std::stoi(fields[0]);
      r.algo = parse_algorithm(fields[1]);
      r.input_len = std::stoi(fields[2]);
      r.output_len = std::stoi(fields[3]);
      r.steps_total = std::stoull(fields[4]);
      r.steps_reducing = std::stoull(fields[5]);
      r.time_ms = std::stod(fields[6]);
      if (!fields[7].empty()) r.correct = fields[7] == "1";
      out.push_back(std::move(r));
    } catch (const std::exception& e) {
      throw ParseError(path.string() + ":" + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::string summary_table(std::span<const AggregateMetrics> metrics) {
  std::ostringstream out;
  char buf[256];
  std::snprintf(buf, sizeof buf, "%-6s %10s %10s %10s %10s %10s %10s %8s %6s\n", "algo",
                "N_s_mean", "N_s_std", "N_red_mean", "N_red_std", "T_ms_mean", "T_ms_std", "E",
                "n");
  out << buf;
  for (const auto& m : metrics) {
    std::string err = "-";
    if (m.error_rate) {
      char e[32];
      std::snprintf(e, sizeof e, "%.4f", *m.error_rate);
      err = e;
    }
    std::snprintf(buf, sizeof buf, "%-6s %10.1f %10.1f %10.2f %10.2f %10.3f %10.3f %8s %6d\n",
                  to_string(m.algo).c_str(), m.ns_mean, m.ns_std, m.nred_mean, m.nred_std,
                  m.t_mean, m.t_std, err.c_str(), m.count);
    out << buf;
  }
  return out.str();
}

std::string summary_csv(std::span<const AggregateMetrics> metrics) {
  std::ostringstream out;
  out << "algo,n,ns_mean,ns_std,nred_mean,nred_std,t_ms_mean,t_ms_std,error_rate,oracle_n\n";
  char buf[256];
  for (const auto& m : metrics) {
    out << to_string(m.algo) << ',' << m.count << ',';
    std::snprintf(buf, sizeof buf, "%.6g,%.6g,%.6g,%.6g,%.3f,%.3f,", m.ns_mean, m.ns_std,
                  m.nred_mean, m.nred_std, m.t_mean, m.t_std);
    out << buf;
    if (m.error_rate) {
      std::snprintf(buf, sizeof buf, "%.6g", *m.error_rate);
      out << buf;
    }
    out << ',' << m.oracle_count << '\n';
  }
  return out.str();
}

void write_summary(const std::filesystem::path& txt_path, const std::filesystem::path& csv_path,
                   std::span<const AggregateMetrics> metrics) {
  std::ofstream txt(txt_path, std::ios::binary);
  if (!txt) throw Error("cannot open summary file for writing: " + txt_path.string());
  txt << summary_table(metrics);
  std::ofstream csv(csv_path, std::ios::binary);
  if (!csv) throw Error("cannot open summary file for writing: " + csv_path.string());
  csv << summary_csv(metrics);
}

}  // namespace whmin

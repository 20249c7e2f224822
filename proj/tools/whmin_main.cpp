#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "whmin/bench.hpp"
#include "whmin/dataset.hpp"
#include "whmin/engines.hpp"
#include "whmin/errors.hpp"
#include "whmin/model_io.hpp"

namespace {

using namespace whmin;

int default_jobs() {
  const unsigned n = std::thread::hardware_concurrency();
  return n == 0 ? 1 : static_cast<int>(n);
}

// --seed wins, then WHMIN_SEED, then 0.
Seed resolve_seed(const std::optional<std::uint64_t>& flag) {
  if (flag) return Seed{*flag};
  if (const char* env = std::getenv("WHMIN_SEED")) {
    try {
      return Seed{std::stoull(env)};
    } catch (const std::exception&) {
      throw ParseError(std::string("WHMIN_SEED is not an integer: ") + env);
    }
  }
  return Seed{0};
}

struct TrainArgs {
  int rank = 3;
  int samples = 6000;
  double alpha = 0.001;
  int len_min = 100;
  int len_max = 600;
  int centroid_samples = 50;
  int centroid_max_len = 200;
  bool certify = false;
  std::optional<std::uint64_t> seed;
  std::string out;
};

int run_train(const TrainArgs& a) {
  BundleTrainConfig cfg;
  cfg.wmin.sample_size = a.samples;
  cfg.wmin.alpha = a.alpha;
  cfg.wmin.len_min = a.len_min;
  cfg.wmin.len_max = a.len_max;
  cfg.centroid_samples_per_class = a.centroid_samples;
  cfg.centroid_max_length = a.centroid_max_len;
  cfg.certify_training = a.certify;
  const ModelBundle bundle = train_model_bundle(a.rank, cfg, resolve_seed(a.seed));
  save_model(bundle, a.out);
  std::cout << "wrote model rank=" << a.rank << " rho=" << bundle.wmin.rho << " to " << a.out
            << "\n";
  return 0;
}

struct GenArgs {
  std::string set = "s1";
  int rank = 3;
  int count = 100;
  int len_min = 0;
  int len_max = 0;
  int auts_min = 1;
  int auts_max = 20;
  int max_len = 0;
  double scale = 0.2;
  bool certify = false;
  int jobs = default_jobs();
  std::optional<std::uint64_t> seed;
  std::string out;
};

int run_gen(const GenArgs& a) {
  DatasetSpec spec;
  spec.kind = parse_dataset_kind(a.set);
  spec.rank = a.rank;
  spec.count = a.count;
  spec.len_min = a.len_min;
  spec.len_max = a.len_max;
  spec.auts_min = a.auts_min;
  spec.auts_max = a.auts_max;
  spec.max_word_length = a.max_len;
  spec.scale = a.scale;
  spec.force_certify = a.certify;
  spec.seed = resolve_seed(a.seed);
  const auto words = gen_dataset(spec, a.jobs);
  write_dataset(a.out, spec, words);
  std::cout << "wrote " << words.size() << " words to " << a.out << "\n";
  return 0;
}

struct ReduceArgs {
  std::string algo = "wr";
  std::optional<int> rank;
  std::string model;
  std::string in;
  std::string out;
  bool no_swr = false;
  bool normalize = false;
  bool verbose = false;
  int pop = GaConfig{}.population;
  int gens = GaConfig{}.generations;
  int jobs = default_jobs();
  std::optional<std::uint64_t> seed;
};

int run_reduce(const ReduceArgs& a) {
  const Algorithm algo = parse_algorithm(a.algo);
  const LoadedDataset data = load_dataset(a.in, a.normalize);
  if (a.rank && *a.rank != data.rank) {
    throw Error("--rank " + std::to_string(*a.rank) + " does not match dataset rank " +
                std::to_string(data.rank));
  }
  std::optional<ModelBundle> bundle;
  EngineSetup setup;
  setup.swr.population = a.pop;
  setup.swr.generations = a.gens;
  if (a.no_swr) setup.enable_swr_in_hdwr = false;
  if (!a.model.empty()) {
    bundle = load_model(a.model);
    if (bundle->rank() != data.rank) {
      throw Error("model rank " + std::to_string(bundle->rank()) +
                  " does not match dataset rank " + std::to_string(data.rank));
    }
    setup.models.centroids = &bundle->centroids;
    setup.models.wmin = &bundle->wmin;
  } else if (algo != Algorithm::wr) {
    throw Error("--model is required for " + to_string(algo));
  }

  std::vector<LabeledWord> dataset(data.words.size());
  for (std::size_t i = 0; i < data.words.size(); ++i) {
    dataset[i].word = data.words[i];
    dataset[i].oracle_min_length = data.oracle_min_length[i];
  }
  const Seed seed = resolve_seed(a.seed);
  if (a.verbose) {
    // Verbose mode runs serially so the per-iteration progress stream stays readable.
    for (std::size_t i = 0; i < dataset.size(); ++i) {
      SearchConfig cfg;
      cfg.algorithm = algo;
      cfg.swr = setup.swr;
      cfg.enable_swr_in_hdwr = setup.enable_swr_in_hdwr;
      cfg.models = setup.models;
      cfg.seed = derive_seed(seed, i);
      cfg.progress = [&](int iter, int len, std::uint64_t steps) {
        std::fprintf(stderr, "word %zu iter %d len %d steps %llu\n", i, iter, len,
                     static_cast<unsigned long long>(steps));
      };
      reduce_word(dataset[i].word, cfg);
    }
  }
  const ExperimentResult result = run_experiment(dataset, {algo}, setup, seed, a.jobs);
  write_records_csv(a.out, result.records);
  std::cout << summary_table(result.metrics);
  return 0;
}

struct ClassifyArgs {
  std::string model;
  std::string in;
  bool normalize = false;
  bool linear_graph = false;
  std::string out;
};

int run_classify(const ClassifyArgs& a) {
  const ModelBundle bundle = load_model(a.model);
  const LoadedDataset data = load_dataset(a.in, a.normalize);
  if (bundle.rank() != data.rank) {
    throw Error("model rank " + std::to_string(bundle.rank()) + " does not match dataset rank " +
                std::to_string(data.rank));
  }
  std::ostringstream lines;
  lines << "word_id,decision,mahalanobis_sq\n";
  for (std::size_t i = 0; i < data.words.size(); ++i) {
    const Word& w = data.words[i];
    if (w.length() < 2) {
      throw Error("word " + std::to_string(i) + " is shorter than 2 letters; cannot classify");
    }
    const GraphMode mode = a.linear_graph ? GraphMode::linear : GraphMode::cyclic;
    const FeatureVector f = feature_vector(w, mode);
    const double dist = mahalanobis_sq(bundle.wmin, f);
    const char* verdict = dist < bundle.wmin.rho ? "minimal" : "non-minimal";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", dist);
    lines << i << ',' << verdict << ',' << buf << '\n';
  }
  if (a.out.empty()) {
    std::cout << lines.str();
  } else {
    std::ofstream file(a.out, std::ios::binary);
    if (!file) throw Error("cannot open output file: " + a.out);
    file << lines.str();
  }
  return 0;
}

struct BenchArgs {
  int rank = 3;
  std::string model;
  std::vector<std::string> sets{"s1", "s10", "sp"};
  std::vector<std::string> algos{"wr", "hdwr", "hpwr"};
  int count = 100;
  double scale = 0.2;
  bool no_swr = false;
  int jobs = default_jobs();
  std::optional<std::uint64_t> seed;
  std::string out;
};

int run_bench(const BenchArgs& a) {
  std::optional<ModelBundle> bundle;
  EngineSetup setup;
  if (a.no_swr) setup.enable_swr_in_hdwr = false;
  std::vector<Algorithm> algos;
  for (const auto& s : a.algos) algos.push_back(parse_algorithm(s));
  const bool needs_model =
      std::any_of(algos.begin(), algos.end(), [](Algorithm x) { return x != Algorithm::wr; });
  if (needs_model) {
    if (a.model.empty()) throw Error("--model is required for hdwr/hpwr benchmarks");
    bundle = load_model(a.model);
    if (bundle->rank() != a.rank) {
      throw Error("model rank " + std::to_string(bundle->rank()) + " does not match --rank " +
                  std::to_string(a.rank));
    }
    setup.models.centroids = &bundle->centroids;
    setup.models.wmin = &bundle->wmin;
  }
  const Seed seed = resolve_seed(a.seed);
  std::filesystem::create_directories(a.out);
  for (std::size_t si = 0; si < a.sets.size(); ++si) {
    DatasetSpec spec;
    spec.kind = parse_dataset_kind(a.sets[si]);
    spec.rank = a.rank;
    spec.count = a.count;
    spec.scale = a.scale;
    spec.seed = derive_seed(seed, 1000 + si);
    const auto dataset = gen_dataset(spec, a.jobs);
    const auto result = run_experiment(dataset, algos, setup, derive_seed(seed, 2000 + si), a.jobs);
    const std::filesystem::path dir(a.out);
    const std::string base = to_string(spec.kind);
    write_dataset(dir / (base + "_words.txt"), spec, dataset);
    write_records_csv(dir / (base + "_records.csv"), result.records);
    write_summary(dir / (base + "_summary.txt"), dir / (base + "_summary.csv"), result.metrics);
    std::cout << "== " << base << " (rank " << a.rank << ", " << dataset.size() << " words) ==\n"
              << summary_table(result.metrics);
  }
  return 0;
}

struct PercentileArgs {
  std::string heuristic = "centroid";
  int q = 99;
  std::string set = "s1";
  int rank = 3;
  int count = 200;
  int len_min = 0;
  int len_max = 0;
  std::string model;
  std::string in;
  int jobs = default_jobs();
  std::optional<std::uint64_t> seed;
};

int run_percentile(const PercentileArgs& a) {
  const Heuristic h = parse_heuristic(a.heuristic);
  std::optional<ModelBundle> bundle;
  const CentroidModel* centroids = nullptr;
  if (!a.model.empty()) {
    bundle = load_model(a.model);
    centroids = &bundle->centroids;
  } else if (h == Heuristic::centroid) {
    throw Error("--model is required for the centroid heuristic");
  }

  std::vector<Word> words;
  if (!a.in.empty()) {
    // Caller-supplied files are trusted to contain non-minimal words only.
    const LoadedDataset data = load_dataset(a.in);
    words = data.words;
  } else {
    DatasetSpec spec;
    spec.kind = parse_dataset_kind(a.set);
    if (spec.kind == DatasetKind::sp) throw Error("percentile expects an s1 or s10 set");
    spec.rank = a.rank;
    spec.count = a.count;
    spec.len_min = a.len_min;
    spec.len_max = a.len_max;
    spec.seed = resolve_seed(a.seed);
    for (const auto& lw : gen_dataset(spec, a.jobs)) {
      if (!lw.minimal_by_construction()) words.push_back(lw.word);
    }
  }
  if (centroids && !words.empty() && centroids->rank != words.front().rank()) {
    throw Error("model rank does not match the dataset rank");
  }
  const PercentileReport rep = percentile_report(words, h, centroids, a.q);
  std::cout << "heuristic=" << to_string(h) << " q=" << a.q << " percentile=" << rep.percentile
            << " counted=" << rep.counted << " excluded=" << rep.excluded << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Whitehead minimization toolkit for free groups"};
  app.require_subcommand(1);

  TrainArgs train;
  auto* t = app.add_subcommand("train", "Train the WMIN classifier and centroid table");
  t->add_option("--rank", train.rank, "Free group rank")->check(CLI::Range(2, kMaxAutRank));
  t->add_option("--samples", train.samples, "Classifier training sample size");
  t->add_option("--alpha", train.alpha, "Quantile confidence parameter in (0, 0.5)");
  t->add_option("--len-min", train.len_min, "Minimum training word length");
  t->add_option("--len-max", train.len_max, "Maximum training word length");
  t->add_option("--centroid-samples", train.centroid_samples, "Samples per Nielsen class");
  t->add_option("--centroid-max-len", train.centroid_max_len, "Centroid base length ceiling");
  t->add_flag("--certify-training", train.certify, "Certify training words with WR");
  t->add_option("--seed", train.seed, "RNG seed (fallback: WHMIN_SEED)");
  t->add_option("--out", train.out, "Output model file")->required();

  GenArgs gen;
  auto* g = app.add_subcommand("gen", "Generate an s1, s10 or sp test set");
  g->add_option("--set", gen.set, "Dataset kind: s1, s10 or sp");
  g->add_option("--rank", gen.rank, "Free group rank")->check(CLI::Range(2, kMaxAutRank));
  g->add_option("--count", gen.count, "Number of words");
  g->add_option("--len-min", gen.len_min, "Base length minimum (0 = auto)");
  g->add_option("--len-max", gen.len_max, "Base length maximum (0 = auto)");
  g->add_option("--auts-min", gen.auts_min, "sp: minimum automorphism count");
  g->add_option("--auts-max", gen.auts_max, "sp: maximum automorphism count");
  g->add_option("--max-len", gen.max_len, "sp: regenerate words longer than this (0 = uncapped)");
  g->add_option("--scale", gen.scale, "Shrink factor for the auto length targets");
  g->add_flag("--certify", gen.certify, "Certify bases with WR even above rank 4");
  g->add_option("--jobs", gen.jobs, "Worker threads");
  g->add_option("--seed", gen.seed, "RNG seed (fallback: WHMIN_SEED)");
  g->add_option("--out", gen.out, "Output dataset file")->required();

  ReduceArgs red;
  auto* r = app.add_subcommand("reduce", "Minimize every word of a dataset file");
  r->add_option("--algo", red.algo, "Algorithm: wr, hdwr or hpwr");
  r->add_option("--rank", red.rank, "Expected dataset rank (cross-checked)");
  r->add_option("--model", red.model, "Model file (required for hdwr/hpwr)");
  r->add_option("--in", red.in, "Input dataset file")->required();
  r->add_option("--out", red.out, "Output records CSV")->required();
  r->add_flag("--no-swr", red.no_swr, "Disable SWR inside hdwr");
  r->add_flag("--normalize", red.normalize, "Freely and cyclically reduce input words on load");
  r->add_flag("--verbose", red.verbose, "Stream per-iteration progress to stderr");
  r->add_option("--pop", red.pop, "SWR population size");
  r->add_option("--gens", red.gens, "SWR generation budget");
  r->add_option("--jobs", red.jobs, "Worker threads");
  r->add_option("--seed", red.seed, "RNG seed (fallback: WHMIN_SEED)");

  ClassifyArgs cls;
  auto* c = app.add_subcommand("classify", "Run the WMIN minimality decision per word");
  c->add_option("--model", cls.model, "Model file")->required();
  c->add_option("--in", cls.in, "Input dataset file")->required();
  c->add_flag("--normalize", cls.normalize, "Freely and cyclically reduce input words on load");
  c->add_flag("--linear-graph", cls.linear_graph,
              "Count Whitehead-graph edges without the wrap pair (comparison mode)");
  c->add_option("--out", cls.out, "Write CSV here instead of stdout");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Generate sets, run engines, emit tables");
  b->add_option("--rank", bench.rank, "Free group rank")->check(CLI::Range(2, kMaxAutRank));
  b->add_option("--model", bench.model, "Model file (required for hdwr/hpwr)");
  b->add_option("--sets", bench.sets, "Comma-separated dataset kinds")->delimiter(',');
  b->add_option("--algos", bench.algos, "Comma-separated algorithms")->delimiter(',');
  b->add_option("--count", bench.count, "Words per set");
  b->add_option("--scale", bench.scale, "Shrink factor for the auto length targets");
  b->add_flag("--no-swr", bench.no_swr, "Disable SWR inside hdwr");
  b->add_option("--jobs", bench.jobs, "Worker threads");
  b->add_option("--seed", bench.seed, "RNG seed (fallback: WHMIN_SEED)");
  b->add_option("--out", bench.out, "Output directory")->required();

  PercentileArgs pct;
  auto* p = app.add_subcommand("percentile", "First-reducer percentile of a heuristic ordering");
  p->add_option("--heuristic", pct.heuristic, "nielsen-first, max-edge or centroid");
  p->add_option("--q", pct.q, "Percentile (nearest rank)")->check(CLI::Range(1, 100));
  p->add_option("--set", pct.set, "Dataset kind to generate: s1 or s10");
  p->add_option("--rank", pct.rank, "Free group rank")->check(CLI::Range(2, kMaxAutRank));
  p->add_option("--count", pct.count, "Words to generate");
  p->add_option("--len-min", pct.len_min, "Base length minimum (0 = auto)");
  p->add_option("--len-max", pct.len_max, "Base length maximum (0 = auto)");
  p->add_option("--model", pct.model, "Model file (required for centroid)");
  p->add_option("--in", pct.in, "Use these non-minimal words instead of generating");
  p->add_option("--jobs", pct.jobs, "Worker threads");
  p->add_option("--seed", pct.seed, "RNG seed (fallback: WHMIN_SEED)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*t) return run_train(train);
    if (*g) return run_gen(gen);
    if (*r) return run_reduce(red);
    if (*c) return run_classify(cls);
    if (*b) return run_bench(bench);
    if (*p) return run_percentile(pct);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const whmin::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

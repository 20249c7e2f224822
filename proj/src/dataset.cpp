#include "whmin/dataset.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <fstream>
#include <functional>
#include <mutex>
#include <sstream>
#include <thread>

#include "whmin/engines.hpp"
#include "whmin/errors.hpp"

namespace whmin {

namespace {

constexpr int kRetryBudget = 2000;

// Seed-stream tags keep base generation reproducible when the same base feeds
// both halves of an s1 set.
enum SeedTag : std::uint64_t { kBaseTag = 1, kInflateTag = 2 };

Rng word_rng(Seed seed, std::uint64_t tag, std::uint64_t index) {
  return Rng(derive_seed(derive_seed(seed, tag), index));
}

// A certified (or assumed, above rank 4) minimal base together with one
// length-increasing inflation of it. Bases that cannot be lengthened (the F2
// commutator class) are resampled, so both halves of an s1 set share usable
// bases. Pure function of (spec, index).
struct BasePair {
  Word base;
  Word inflated;
  WhiteheadAut aut;
};

BasePair gen_base_pair(const DatasetSpec& spec, const MinimalityOracle& oracle, int len_min,
                       int len_max, std::uint64_t index) {
  Rng rng = word_rng(spec.seed, kBaseTag, index);
  for (int tries = 0; tries < kRetryBudget; ++tries) {
    const int len = rng.range_int(len_min, len_max);
    Word w = random_cyclically_reduced_word(spec.rank, len, rng);
    if (!oracle(w)) continue;
    auto inflated = try_inflate_once(w, rng);
    if (!inflated) continue;
    return {std::move(w), std::move(inflated->second), std::move(inflated->first)};
  }
  throw GenerationError("gen_dataset: could not build a minimal inflatable base word (rank " +
                        std::to_string(spec.rank) + ")");
}

LabeledWord gen_s1(const DatasetSpec& spec, const MinimalityOracle& oracle, bool certified,
                   int len_min, int len_max, int index, int minimal_half) {
  LabeledWord out;
  if (index < minimal_half) {
    BasePair pair = gen_base_pair(spec, oracle, len_min, len_max,
                                  static_cast<std::uint64_t>(index));
    out.word = std::move(pair.base);
    out.oracle_min_length = out.word.length();
    out.oracle_certified = certified;
    out.provenance.base_length = out.word.length();
    return out;
  }
  const auto base_index = static_cast<std::uint64_t>(index - minimal_half);
  BasePair pair = gen_base_pair(spec, oracle, len_min, len_max, base_index);
  out.word = std::move(pair.inflated);
  out.oracle_min_length = pair.base.length();
  out.oracle_certified = certified;
  out.provenance.base_length = pair.base.length();
  out.provenance.auts.push_back(std::move(pair.aut));
  return out;
}

LabeledWord gen_s10(const DatasetSpec& spec, const MinimalityOracle& oracle, bool certified,
                    int len_min, int len_max, int index) {
  const Word base =
      gen_base_pair(spec, oracle, len_min, len_max, static_cast<std::uint64_t>(index)).base;
  Rng rng = word_rng(spec.seed, kInflateTag, static_cast<std::uint64_t>(index));
  for (int tries = 0; tries < kRetryBudget; ++tries) {
    const int k = rng.range_int(1, 10);
    AutSequence auts;
    auts.reserve(static_cast<std::size_t>(k));
    Word w = base;
    for (int i = 0; i < k; ++i) {
      WhiteheadAut t = random_whitehead(spec.rank, rng);
      w = t.apply(w);
      auts.push_back(std::move(t));
    }
    if (w.length() <= base.length()) continue;  // must end strictly longer than the base
    LabeledWord out;
    out.word = std::move(w);
    out.oracle_min_length = base.length();
    out.oracle_certified = certified;
    out.provenance.base_length = base.length();
    out.provenance.auts = std::move(auts);
    return out;
  }
  throw GenerationError("gen_dataset: s10 inflation never exceeded the base length");
}

LabeledWord gen_sp(const DatasetSpec& spec, int index) {
  Rng rng = word_rng(spec.seed, kInflateTag, static_cast<std::uint64_t>(index));
  for (int tries = 0; tries < kRetryBudget; ++tries) {
    const Letter start = letter_at_vertex(rng.below_int(2 * spec.rank));
    Word w({start}, spec.rank);
    const int k = rng.range_int(spec.auts_min, spec.auts_max);
    AutSequence auts;
    auts.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
      WhiteheadAut t = random_whitehead(spec.rank, rng);
      w = t.apply(w);
      auts.push_back(std::move(t));
    }
    if (spec.max_word_length > 0 && w.length() > spec.max_word_length) continue;
    LabeledWord out;
    out.word = std::move(w);
    out.oracle_min_length = 1;  // primitive by construction
    out.oracle_certified = true;
    out.provenance.base_length = 1;
    out.provenance.auts = std::move(auts);
    return out;
  }
  throw GenerationError("gen_dataset: sp words kept exceeding max_word_length " +
                        std::to_string(spec.max_word_length));
}

void run_indexed(int count, int jobs, const std::function<void(int)>& fn) {
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

std::string to_string(DatasetKind k) {
  switch (k) {
    case DatasetKind::s1: return "s1";
    case DatasetKind::s10: return "s10";
    case DatasetKind::sp: return "sp";
  }
  return "?";
}

DatasetKind parse_dataset_kind(std::string_view text) {
  if (text == "s1") return DatasetKind::s1;
  if (text == "s10") return DatasetKind::s10;
  if (text == "sp") return DatasetKind::sp;
  throw ParseError("unknown dataset kind '" + std::string(text) + "' (expected s1, s10 or sp)");
}

std::pair<int, int> dataset_length_range(const DatasetSpec& spec) {
  // The reference corpora average roughly 600-letter inflated words; the scale
  // factor shrinks the target for desk-size runs.
  int lo = spec.len_min;
  int hi = spec.len_max;
  if (lo == 0) lo = 10;
  if (hi == 0) hi = std::max(lo, static_cast<int>(std::lround(600.0 * spec.scale)));
  if (lo < 2 || hi < lo) {
    throw std::invalid_argument("dataset_length_range: need 2 <= len_min <= len_max");
  }
  return {lo, hi};
}

std::vector<LabeledWord> gen_dataset(const DatasetSpec& spec, int jobs) {
  if (spec.count < 1) throw std::invalid_argument("gen_dataset: count must be >= 1");
  if (spec.rank < 2) throw std::invalid_argument("gen_dataset: rank must be >= 2");
  if (spec.auts_min < 1 || spec.auts_max < spec.auts_min) {
    throw std::invalid_argument("gen_dataset: need 1 <= auts_min <= auts_max");
  }
  const auto [len_min, len_max] = dataset_length_range(spec);
  const bool certified = spec.rank <= 4 || spec.force_certify;
  const MinimalityOracle oracle = default_minimality_oracle(spec.rank, spec.force_certify);
  const int minimal_half = spec.count / 2;

  std::vector<LabeledWord> out(static_cast<std::size_t>(spec.count));
  run_indexed(spec.count, jobs, [&](int i) {
    switch (spec.kind) {
      case DatasetKind::s1:
        out[static_cast<std::size_t>(i)] =
            gen_s1(spec, oracle, certified, len_min, len_max, i, minimal_half);
        break;
      case DatasetKind::s10:
        out[static_cast<std::size_t>(i)] = gen_s10(spec, oracle, certified, len_min, len_max, i);
        break;
      case DatasetKind::sp:
        out[static_cast<std::size_t>(i)] = gen_sp(spec, i);
        break;
    }
  });
  return out;
}

void write_dataset(const std::filesystem::path& path, const DatasetSpec& spec,
                   const std::vector<LabeledWord>& words) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open dataset file for writing: " + path.string());
  out << "# whmin dataset kind=" << to_string(spec.kind) << " rank=" << spec.rank
      << " count=" << words.size() << " seed=" << spec.seed.value << "\n";
  out << "rank=" << spec.rank << "\n";
  for (std::size_t i = 0; i < words.size(); ++i) {
    const LabeledWord& lw = words[i];
    out << to_string(lw.word) << "\n";
    out << "# " << i << ":";
    if (lw.oracle_min_length) {
      out << " oracle_min=" << *lw.oracle_min_length << " certified=" << (lw.oracle_certified ? 1 : 0);
    }
    out << " base_len=" << lw.provenance.base_length << " auts=" << lw.provenance.auts.size();
    if (!lw.provenance.auts.empty()) {
      out << " trace=";
      for (std::size_t k = 0; k < lw.provenance.auts.size(); ++k) {
        if (k) out << "|";
        out << to_string(lw.provenance.auts[k]);
      }
    }
    out << "\n";
  }
  if (!out) throw Error("failed writing dataset file: " + path.string());
}

LoadedDataset load_dataset(const std::filesystem::path& path, bool normalize) {
  std::ifstream in(path);
  if (!in) throw Error("cannot open dataset file: " + path.string());
  LoadedDataset out;
  std::string line;
  bool have_rank = false;
  int line_no = 0;
  auto context = [&](const std::string& msg) {
    return path.string() + ":" + std::to_string(line_no) + ": " + msg;
  };
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::string_view view(line);
    const auto first = view.find_first_not_of(" \t");
    if (first == std::string_view::npos) {
      // A blank line inside the body is the identity word.
      if (have_rank) {
        out.words.emplace_back(out.rank);
        out.oracle_min_length.emplace_back();
      }
      continue;
    }
    if (view[first] == '#') {
      // Trailing provenance comments may carry the oracle length.
      if (!out.words.empty() && out.oracle_min_length.size() == out.words.size()) {
        const auto pos = view.find("oracle_min=");
        if (pos != std::string_view::npos) {
          int value = 0;
          std::istringstream num{std::string(view.substr(pos + 11))};
          if (num >> value) out.oracle_min_length.back() = value;
        }
      }
      continue;
    }
    if (!have_rank) {
      if (view.substr(first, 5) != "rank=") {
        throw ParseError(context("first non-comment line must be rank=<n>"));
      }
      std::istringstream num{std::string(view.substr(first + 5))};
      if (!(num >> out.rank) || out.rank < 1) {
        throw ParseError(context("bad rank value"));
      }
      have_rank = true;
      continue;
    }
    try {
      auto letters = parse_letters(view);
      Word w = normalize ? cyclic_reduce(free_reduce(letters, out.rank))
                         : Word(std::move(letters), out.rank);
      if (!normalize && !w.is_cyclically_reduced()) {
        throw ParseError("word is not cyclically reduced (use --normalize to reduce on load)");
      }
      out.words.push_back(std::move(w));
      out.oracle_min_length.emplace_back();
    } catch (const std::invalid_argument& e) {
      throw ParseError(context(e.what()));
    } catch (const ParseError& e) {
      throw ParseError(context(e.what()));
    }
  }
  if (!have_rank) throw ParseError(path.string() + ": missing rank=<n> header");
  return out;
}

}  // namespace whmin

#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "whmin/automorphism.hpp"
#include "whmin/rng.hpp"
#include "whmin/word.hpp"

namespace whmin {

enum class DatasetKind { s1, s10, sp };

std::string to_string(DatasetKind k);
DatasetKind parse_dataset_kind(std::string_view text);

// s1: half certified-minimal words, half the same words inflated by exactly
//     one length-increasing Whitehead automorphism.
// s10: bases inflated by 1..10 automorphisms, kept when strictly longer.
// sp: a random generator letter inflated by auts_min..auts_max automorphisms;
//     primitive by construction, orbit length 1.
struct DatasetSpec {
  DatasetKind kind = DatasetKind::s1;
  int rank = 2;
  int count = 1;
  // 0 means auto: a paper-scale target length range shrunk by `scale`.
  int len_min = 0;
  int len_max = 0;
  int auts_min = 1;   // sp only
  int auts_max = 20;  // sp only
  int max_word_length = 0;  // sp only; 0 = uncapped, else regenerate longer words
  double scale = 0.2;
  bool force_certify = false;  // certify bases above rank 4 too
  Seed seed;
};

// Effective base-length range after applying defaults and `scale`.
std::pair<int, int> dataset_length_range(const DatasetSpec& spec);

struct Provenance {
  int base_length = 0;
  AutSequence auts;  // inflating automorphisms, applied left to right
};

struct LabeledWord {
  Word word;
  std::optional<int> oracle_min_length;
  bool oracle_certified = false;
  Provenance provenance;

  bool minimal_by_construction() const { return provenance.auts.empty(); }
};

std::vector<LabeledWord> gen_dataset(const DatasetSpec& spec, int jobs = 1);

// Dataset text format: comment lines start with '#', the first non-comment
// line is `rank=<n>`, then one word per line with a trailing provenance
// comment.
void write_dataset(const std::filesystem::path& path, const DatasetSpec& spec,
                   const std::vector<LabeledWord>& words);

struct LoadedDataset {
  int rank = 0;
  std::vector<Word> words;
  std::vector<std::optional<int>> oracle_min_length;  // parsed from comments when present
};

// Words must be freely and cyclically reduced unless `normalize` is set.
LoadedDataset load_dataset(const std::filesystem::path& path, bool normalize = false);

}  // namespace whmin

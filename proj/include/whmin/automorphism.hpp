#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "whmin/word.hpp"

namespace whmin {

// 2n*4^(n-1) - 2n no longer fits in 64 bits past rank 30.
inline constexpr int kMaxAutRank = 30;

std::uint64_t nielsen_count(int rank);    // 4n(n-1), rank >= 2
std::uint64_t whitehead_count(int rank);  // 2n*4^(n-1) - 2n, rank in [2, kMaxAutRank]

// x -> xy (right) or x -> yx (left) for one generator x and a letter y with a
// different base; every other generator is fixed. Length-invariant maps
// (x -> x^{-1}) are excluded.
struct NielsenAut {
  enum class Side : std::uint8_t { right = 0, left = 1 };

  int target = 1;
  Letter multiplier = 2;
  Side side = Side::right;

  Word apply(const Word& w) const;  // substitute, freely reduce, cyclically reduce
  friend bool operator==(const NielsenAut&, const NielsenAut&) = default;
};

enum class Action : std::uint8_t { fix = 0, right = 1, left = 2, conj = 3 };

// Type-II Whitehead automorphism: fixes the multiplier letter a and sends every
// generator x with base(x) != base(a) to one of x, xa, a^{-1}x, a^{-1}xa.
// Images of inverse letters are derived, never stored.
class WhiteheadAut {
 public:
  // actions[g-1] is the action on generator g; the multiplier's own entry must
  // be fix.
  WhiteheadAut(int rank, Letter multiplier, std::span<const Action> actions);

  int rank() const { return rank_; }
  Letter multiplier() const { return multiplier_; }
  Action action(int generator) const { return actions_[static_cast<std::size_t>(generator - 1)]; }
  bool is_identity() const;
  bool is_inner() const;  // every non-multiplier action is conj
  Word apply(const Word& w) const;

  friend bool operator==(const WhiteheadAut&, const WhiteheadAut&) = default;

 private:
  std::array<Action, kMaxAutRank> actions_{};
  Letter multiplier_ = 0;
  std::int16_t rank_ = 0;
};

// Composition applies left to right: w * <t1,...,ts> = (((w t1) t2) ... ts).
using AutSequence = std::vector<WhiteheadAut>;

// Fixed order: by target, then multiplier vertex, then side (right before left).
std::vector<NielsenAut> enumerate_nielsen(int rank);
// Fixed order: by multiplier vertex, then lexicographic action tuple over the
// other generators (fix < right < left < conj); the identity tuple is skipped.
std::vector<WhiteheadAut> enumerate_whitehead(int rank);

std::uint64_t nielsen_enum_index(const NielsenAut& t, int rank);
NielsenAut nielsen_at(int rank, std::uint64_t index);
std::uint64_t whitehead_enum_index(const WhiteheadAut& t);

WhiteheadAut to_whitehead(const NielsenAut& t, int rank);
// nielsen enumeration index -> position of the equal map in enumerate_whitehead.
std::vector<std::uint64_t> nielsen_subset_index(int rank);

WhiteheadAut inverse(const WhiteheadAut& t);
// Uniform over W(X).
WhiteheadAut random_whitehead(int rank, Rng& rng);
// Random aut with a strictly longer image of w. Some words (the F2 commutator
// class, for one) have no length-increasing automorphism at all, so the try_
// variant returns empty after the budget; inflate_once throws instead.
std::optional<std::pair<WhiteheadAut, Word>> try_inflate_once(const Word& w, Rng& rng,
                                                              int max_tries = 200);
std::pair<WhiteheadAut, Word> inflate_once(const Word& w, Rng& rng, int max_tries = 1000);

Word apply(const NielsenAut& t, const Word& w);
Word apply(const WhiteheadAut& t, const Word& w);
Word apply_sequence(const AutSequence& seq, const Word& w);

// Stable textual forms: N(x1->x1*x2) and W(a=x2; x1:conj, x3:right).
std::string to_string(const NielsenAut& t);
std::string to_string(const WhiteheadAut& t);
NielsenAut parse_nielsen(std::string_view text);

}  // namespace whmin

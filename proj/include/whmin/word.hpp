#pragma once

#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "whmin/rng.hpp"

namespace whmin {

// A letter of the alphabet X ∪ X^{-1}: +k encodes the generator x_k, -k its
// inverse. 0 is not a letter.
using Letter = std::int32_t;

constexpr Letter inverse(Letter l) { return -l; }
constexpr int base_index(Letter l) { return static_cast<int>(l < 0 ? -l : l); }
constexpr bool is_positive(Letter l) { return l > 0; }

// Position of a letter in the fixed vertex order x1, x1^{-1}, x2, x2^{-1}, ...
constexpr int vertex_index(Letter l) { return 2 * (base_index(l) - 1) + (l < 0 ? 1 : 0); }
constexpr Letter letter_at_vertex(int v) { return (v % 2 == 0) ? (v / 2 + 1) : -(v / 2 + 1); }

std::string letter_to_string(Letter l);

bool is_freely_reduced(std::span<const Letter> letters);

// A freely reduced word over x1..xn and their inverses. Immutable value type;
// the empty word is the identity.
class Word {
 public:
  Word() = default;
  explicit Word(int rank) : rank_(rank) {}
  // Letters must already be freely reduced and within rank.
  Word(std::vector<Letter> letters, int rank);

  int rank() const { return rank_; }
  int length() const { return static_cast<int>(letters_.size()); }
  bool empty() const { return letters_.empty(); }
  std::span<const Letter> letters() const { return letters_; }
  Letter at(int i) const { return letters_[static_cast<std::size_t>(i)]; }
  Letter first() const { return letters_.front(); }
  Letter last() const { return letters_.back(); }
  bool is_cyclically_reduced() const;

  friend bool operator==(const Word&, const Word&) = default;
  friend auto operator<=>(const Word&, const Word&) = default;

 private:
  std::vector<Letter> letters_;
  int rank_ = 0;
};

// Unique freely reduced form of an arbitrary letter sequence.
Word free_reduce(std::span<const Letter> raw, int rank);
// Strips matching first/last inverse pairs. Input must be freely reduced.
Word cyclic_reduce(const Word& w);
Word multiply(const Word& u, const Word& v);
Word inverse(const Word& w);

// Uniform over freely reduced words of exactly the given length: first letter
// uniform over 2n, each next uniform over the 2n-1 non-cancelling letters.
Word random_reduced_word(int rank, int length, Rng& rng);
Word random_reduced_word(int rank, int length, Seed seed);
// Rejection from random_reduced_word until first != inverse(last).
Word random_cyclically_reduced_word(int rank, int length, Rng& rng);
Word random_cyclically_reduced_word(int rank, int length, Seed seed);

// Text form: whitespace-separated `x<k>` / `X<k>` tokens; empty for the identity.
std::string to_string(const Word& w);
std::vector<Letter> parse_letters(std::string_view text);
// Parses and validates free reducedness.
Word parse_word(std::string_view text, int rank);

}  // namespace whmin

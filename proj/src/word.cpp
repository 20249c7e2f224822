#include "whmin/word.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

#include "whmin/errors.hpp"

namespace whmin {

namespace {

void check_rank(std::span<const Letter> letters, int rank) {
  for (Letter l : letters) {
    if (l == 0 || base_index(l) > rank) {
      throw std::invalid_argument("letter " + letter_to_string(l) + " outside rank " +
                                  std::to_string(rank));
    }
  }
}

}  // namespace

std::string letter_to_string(Letter l) {
  if (l == 0) return "<0>";
  return (l > 0 ? "x" : "X") + std::to_string(base_index(l));
}

bool is_freely_reduced(std::span<const Letter> letters) {
  for (std::size_t i = 1; i < letters.size(); ++i) {
    if (letters[i] == inverse(letters[i - 1])) return false;
  }
  return true;
}

Word::Word(std::vector<Letter> letters, int rank) : letters_(std::move(letters)), rank_(rank) {
  check_rank(letters_, rank_);
  if (!is_freely_reduced(letters_)) {
    throw std::invalid_argument("word is not freely reduced");
  }
}

bool Word::is_cyclically_reduced() const {
  return letters_.size() < 2 || letters_.front() != inverse(letters_.back());
}

Word free_reduce(std::span<const Letter> raw, int rank) {
  check_rank(raw, rank);
  std::vector<Letter> out;
  out.reserve(raw.size());
  for (Letter l : raw) {
    if (!out.empty() && out.back() == inverse(l)) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return Word(std::move(out), rank);
}

Word cyclic_reduce(const Word& w) {
  std::size_t lo = 0;
  std::size_t hi = w.letters().size();
  const auto letters = w.letters();
  while (hi - lo >= 2 && letters[lo] == inverse(letters[hi - 1])) {
    ++lo;
    --hi;
  }
  return Word(std::vector<Letter>(letters.begin() + lo, letters.begin() + hi), w.rank());
}

Word multiply(const Word& u, const Word& v) {
  if (u.rank() != v.rank()) {
    throw std::invalid_argument("multiply: rank mismatch (" + std::to_string(u.rank()) + " vs " +
                                std::to_string(v.rank()) + ")");
  }
  std::vector<Letter> out(u.letters().begin(), u.letters().end());
  for (Letter l : v.letters()) {
    if (!out.empty() && out.back() == inverse(l)) {
      out.pop_back();
    } else {
      out.push_back(l);
    }
  }
  return Word(std::move(out), u.rank());
}

Word inverse(const Word& w) {
  std::vector<Letter> out;
  out.reserve(w.letters().size());
  for (auto it = w.letters().rbegin(); it != w.letters().rend(); ++it) {
    out.push_back(inverse(*it));
  }
  return Word(std::move(out), w.rank());
}

Word random_reduced_word(int rank, int length, Rng& rng) {
  if (rank < 1) throw std::invalid_argument("random_reduced_word: rank must be >= 1");
  if (length < 0) throw std::invalid_argument("random_reduced_word: negative length");
  std::vector<Letter> out;
  out.reserve(static_cast<std::size_t>(length));
  const int alphabet = 2 * rank;
  for (int i = 0; i < length; ++i) {
    if (out.empty()) {
      out.push_back(letter_at_vertex(rng.below_int(alphabet)));
    } else {
      // Skip over the one letter that would cancel the previous one.
      const int banned = vertex_index(inverse(out.back()));
      int v = rng.below_int(alphabet - 1);
      if (v >= banned) ++v;
      out.push_back(letter_at_vertex(v));
    }
  }
  return Word(std::move(out), rank);
}

Word random_reduced_word(int rank, int length, Seed seed) {
  Rng rng(seed);
  return random_reduced_word(rank, length, rng);
}

Word random_cyclically_reduced_word(int rank, int length, Rng& rng) {
  if (length < 1) throw std::invalid_argument("random_cyclically_reduced_word: length must be >= 1");
  for (;;) {
    Word w = random_reduced_word(rank, length, rng);
    if (w.is_cyclically_reduced()) return w;
  }
}

Word random_cyclically_reduced_word(int rank, int length, Seed seed) {
  Rng rng(seed);
  return random_cyclically_reduced_word(rank, length, rng);
}

std::string to_string(const Word& w) {
  std::string out;
  for (Letter l : w.letters()) {
    if (!out.empty()) out += ' ';
    out += letter_to_string(l);
  }
  return out;
}

std::vector<Letter> parse_letters(std::string_view text) {
  std::vector<Letter> out;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    if (token.size() < 2 || (token[0] != 'x' && token[0] != 'X')) {
      throw ParseError("bad word token '" + token + "' (expected x<k> or X<k>)");
    }
    int k = 0;
    for (std::size_t i = 1; i < token.size(); ++i) {
      if (!std::isdigit(static_cast<unsigned char>(token[i]))) {
        throw ParseError("bad word token '" + token + "' (expected x<k> or X<k>)");
      }
      k = k * 10 + (token[i] - '0');
      if (k > 1'000'000) throw ParseError("generator index too large in '" + token + "'");
    }
    if (k == 0) throw ParseError("generator index must be >= 1 in '" + token + "'");
    out.push_back(token[0] == 'x' ? k : -k);
  }
  return out;
}

Word parse_word(std::string_view text, int rank) {
  auto letters = parse_letters(text);
  check_rank(letters, rank);
  if (!is_freely_reduced(letters)) {
    throw ParseError("word '" + std::string(text) + "' is not freely reduced");
  }
  return Word(std::move(letters), rank);
}

}  // namespace whmin

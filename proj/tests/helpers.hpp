#pragma once

// Test-only oracles and generators. Everything here recomputes results by
// definition, independent of the library's production code paths.

#include <algorithm>
#include <optional>
#include <vector>

#include "whmin/automorphism.hpp"
#include "whmin/feature.hpp"
#include "whmin/rng.hpp"
#include "whmin/word.hpp"

namespace whmin::testing {

// Removes one adjacent cancelling pair per pass until none remains.
inline std::vector<Letter> naive_free_reduce(std::vector<Letter> letters) {
  for (;;) {
    bool changed = false;
    for (std::size_t i = 0; i + 1 < letters.size(); ++i) {
      if (letters[i] == inverse(letters[i + 1])) {
        letters.erase(letters.begin() + static_cast<std::ptrdiff_t>(i),
                      letters.begin() + static_cast<std::ptrdiff_t>(i + 2));
        changed = true;
        break;
      }
    }
    if (!changed) return letters;
  }
}

// Right-to-left reduction for the confluence check.
inline std::vector<Letter> reduce_right_to_left(std::span<const Letter> letters) {
  std::vector<Letter> out;
  for (auto it = letters.rbegin(); it != letters.rend(); ++it) {
    if (!out.empty() && out.back() == inverse(*it)) {
      out.pop_back();
    } else {
      out.push_back(*it);
    }
  }
  std::reverse(out.begin(), out.end());
  return out;
}

// All freely reduced words of a given length, by recursion on the last letter.
inline std::vector<std::vector<Letter>> enumerate_reduced_words(int rank, int length) {
  std::vector<std::vector<Letter>> out;
  std::vector<Letter> current;
  auto recurse = [&](auto&& self) -> void {
    if (static_cast<int>(current.size()) == length) {
      out.push_back(current);
      return;
    }
    for (int v = 0; v < 2 * rank; ++v) {
      const Letter l = letter_at_vertex(v);
      if (!current.empty() && l == inverse(current.back())) continue;
      current.push_back(l);
      self(self);
      current.pop_back();
    }
  };
  recurse(recurse);
  return out;
}

// Minimum reduced length of c^{-1} w c over all conjugators up to max_len.
inline int conjugacy_length_oracle(const Word& w, int max_conjugator_len) {
  int best = w.length();
  for (int len = 1; len <= max_conjugator_len; ++len) {
    for (const auto& letters : enumerate_reduced_words(w.rank(), len)) {
      const Word c(letters, w.rank());
      const Word conj = multiply(multiply(inverse(c), w), c);
      best = std::min(best, conj.length());
    }
  }
  return best;
}

inline Word rotate(const Word& w, int k) {
  std::vector<Letter> letters(w.letters().begin(), w.letters().end());
  std::rotate(letters.begin(), letters.begin() + k, letters.end());
  return Word(std::move(letters), w.rank());
}

// Equality as cyclic words: some rotation matches. Only meaningful for
// cyclically reduced inputs.
inline bool cyclically_equal(const Word& a, const Word& b) {
  if (a.rank() != b.rank() || a.length() != b.length()) return false;
  if (a.length() == 0) return true;
  for (int k = 0; k < a.length(); ++k) {
    if (rotate(a, k) == b) return true;
  }
  return false;
}

// Edge counts recomputed with a dumb per-pair scan over an explicit pair list.
inline std::vector<std::int64_t> naive_edge_counts(const Word& u) {
  const EdgeIndexing idx{u.rank()};
  std::vector<std::int64_t> counts(static_cast<std::size_t>(idx.edge_count()), 0);
  const auto letters = u.letters();
  for (std::size_t i = 0; i < letters.size(); ++i) {
    const Letter a = letters[i];
    const Letter b = letters[(i + 1) % letters.size()];
    const int va = vertex_index(a);
    const int vb = vertex_index(inverse(b));
    // Scan every edge instead of using the index arithmetic under test.
    for (int e = 0; e < idx.edge_count(); ++e) {
      const auto [p, q] = idx.edge_at(e);
      if ((p == va && q == vb) || (p == vb && q == va)) {
        ++counts[static_cast<std::size_t>(e)];
      }
    }
  }
  return counts;
}

}  // namespace whmin::testing

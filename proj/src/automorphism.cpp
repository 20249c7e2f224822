#include "whmin/automorphism.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

#include "whmin/errors.hpp"

namespace whmin {

namespace {

void require_rank_at_least_2(int rank, const char* who) {
  if (rank < 2) {
    throw std::invalid_argument(std::string(who) + ": rank must be >= 2, got " +
                                std::to_string(rank));
  }
}

std::uint64_t pow4(int e) { return std::uint64_t{1} << (2 * e); }

// Reduction stack used by all apply paths; free reduction is confluent, so a
// single push-with-cancel pass yields the unique reduced word.
inline void push_cancel(std::vector<Letter>& out, Letter l) {
  if (!out.empty() && out.back() == inverse(l)) {
    out.pop_back();
  } else {
    out.push_back(l);
  }
}

Word strip_cyclic(std::vector<Letter>&& out, int rank) {
  std::size_t lo = 0;
  std::size_t hi = out.size();
  while (hi - lo >= 2 && out[lo] == inverse(out[hi - 1])) {
    ++lo;
    --hi;
  }
  if (lo == 0 && hi == out.size()) return Word(std::move(out), rank);
  return Word(std::vector<Letter>(out.begin() + static_cast<std::ptrdiff_t>(lo),
                                  out.begin() + static_cast<std::ptrdiff_t>(hi)),
              rank);
}

}  // namespace

std::uint64_t nielsen_count(int rank) {
  require_rank_at_least_2(rank, "nielsen_count");
  const auto n = static_cast<std::uint64_t>(rank);
  return 4 * n * (n - 1);
}

std::uint64_t whitehead_count(int rank) {
  require_rank_at_least_2(rank, "whitehead_count");
  if (rank > kMaxAutRank) {
    throw std::invalid_argument("whitehead_count: 2n*4^(n-1) - 2n overflows for rank " +
                                std::to_string(rank));
  }
  const auto n = static_cast<std::uint64_t>(rank);
  return 2 * n * (pow4(rank - 1) - 1);
}

Word NielsenAut::apply(const Word& w) const {
  if (base_index(multiplier) > w.rank() || target > w.rank()) {
    throw std::invalid_argument("NielsenAut::apply: automorphism exceeds word rank");
  }
  std::vector<Letter> out;
  out.reserve(static_cast<std::size_t>(2 * w.length()));
  const Letter y = multiplier;
  for (Letter l : w.letters()) {
    if (base_index(l) != target) {
      push_cancel(out, l);
    } else if (side == Side::right) {
      // x -> xy, x^{-1} -> y^{-1} x^{-1}
      if (l > 0) {
        push_cancel(out, l);
        push_cancel(out, y);
      } else {
        push_cancel(out, inverse(y));
        push_cancel(out, l);
      }
    } else {
      // x -> yx, x^{-1} -> x^{-1} y^{-1}
      if (l > 0) {
        push_cancel(out, y);
        push_cancel(out, l);
      } else {
        push_cancel(out, l);
        push_cancel(out, inverse(y));
      }
    }
  }
  return strip_cyclic(std::move(out), w.rank());
}

WhiteheadAut::WhiteheadAut(int rank, Letter multiplier, std::span<const Action> actions)
    : multiplier_(multiplier), rank_(static_cast<std::int16_t>(rank)) {
  require_rank_at_least_2(rank, "WhiteheadAut");
  if (rank > kMaxAutRank) {
    throw std::invalid_argument("WhiteheadAut: rank exceeds " + std::to_string(kMaxAutRank));
  }
  if (multiplier == 0 || base_index(multiplier) > rank) {
    throw std::invalid_argument("WhiteheadAut: multiplier outside rank");
  }
  if (actions.size() != static_cast<std::size_t>(rank)) {
    throw std::invalid_argument("WhiteheadAut: need one action per generator");
  }
  if (actions[static_cast<std::size_t>(base_index(multiplier) - 1)] != Action::fix) {
    throw std::invalid_argument("WhiteheadAut: the multiplier's generator must stay fixed");
  }
  std::copy(actions.begin(), actions.end(), actions_.begin());
}

bool WhiteheadAut::is_identity() const {
  for (int g = 1; g <= rank_; ++g) {
    if (action(g) != Action::fix) return false;
  }
  return true;
}

bool WhiteheadAut::is_inner() const {
  for (int g = 1; g <= rank_; ++g) {
    if (g == base_index(multiplier_)) continue;
    if (action(g) != Action::conj) return false;
  }
  return true;
}

Word WhiteheadAut::apply(const Word& w) const {
  if (w.rank() != rank_) {
    throw std::invalid_argument("WhiteheadAut::apply: rank mismatch (" + std::to_string(rank_) +
                                " vs word rank " + std::to_string(w.rank()) + ")");
  }
  const Letter a = multiplier_;
  const int mult_base = base_index(a);
  std::vector<Letter> out;
  out.reserve(static_cast<std::size_t>(3 * w.length()));
  for (Letter l : w.letters()) {
    const int b = base_index(l);
    if (b == mult_base) {
      push_cancel(out, l);
      continue;
    }
    switch (actions_[static_cast<std::size_t>(b - 1)]) {
      case Action::fix:
        push_cancel(out, l);
        break;
      case Action::right:
        // x -> xa, x^{-1} -> a^{-1} x^{-1}
        if (l > 0) {
          push_cancel(out, l);
          push_cancel(out, a);
        } else {
          push_cancel(out, inverse(a));
          push_cancel(out, l);
        }
        break;
      case Action::left:
        // x -> a^{-1} x, x^{-1} -> x^{-1} a
        if (l > 0) {
          push_cancel(out, inverse(a));
          push_cancel(out, l);
        } else {
          push_cancel(out, l);
          push_cancel(out, a);
        }
        break;
      case Action::conj:
        push_cancel(out, inverse(a));
        push_cancel(out, l);
        push_cancel(out, a);
        break;
    }
  }
  return strip_cyclic(std::move(out), w.rank());
}

std::vector<NielsenAut> enumerate_nielsen(int rank) {
  require_rank_at_least_2(rank, "enumerate_nielsen");
  std::vector<NielsenAut> out;
  out.reserve(static_cast<std::size_t>(nielsen_count(rank)));
  for (int target = 1; target <= rank; ++target) {
    for (int v = 0; v < 2 * rank; ++v) {
      const Letter y = letter_at_vertex(v);
      if (base_index(y) == target) continue;
      out.push_back({target, y, NielsenAut::Side::right});
      out.push_back({target, y, NielsenAut::Side::left});
    }
  }
  return out;
}

std::uint64_t nielsen_enum_index(const NielsenAut& t, int rank) {
  require_rank_at_least_2(rank, "nielsen_enum_index");
  const int v = vertex_index(t.multiplier);
  const int skipped = base_index(t.multiplier) > t.target ? 2 : 0;
  const auto mult_pos = static_cast<std::uint64_t>(v - skipped);
  return (static_cast<std::uint64_t>(t.target - 1) * (2 * rank - 2) + mult_pos) * 2 +
         (t.side == NielsenAut::Side::left ? 1 : 0);
}

NielsenAut nielsen_at(int rank, std::uint64_t index) {
  require_rank_at_least_2(rank, "nielsen_at");
  if (index >= nielsen_count(rank)) throw std::invalid_argument("nielsen_at: index out of range");
  const auto side = static_cast<NielsenAut::Side>(index % 2);
  index /= 2;
  const auto per_target = static_cast<std::uint64_t>(2 * rank - 2);
  const int target = static_cast<int>(index / per_target) + 1;
  auto mult_pos = index % per_target;
  if (mult_pos >= static_cast<std::uint64_t>(2 * (target - 1))) mult_pos += 2;
  return {target, letter_at_vertex(static_cast<int>(mult_pos)), side};
}

std::vector<WhiteheadAut> enumerate_whitehead(int rank) {
  require_rank_at_least_2(rank, "enumerate_whitehead");
  const std::uint64_t total = whitehead_count(rank);
  // A sweep over hundreds of millions of automorphisms is not going to finish
  // anyway; refuse to materialize it.
  if (total > 50'000'000) {
    throw Error("enumerate_whitehead: |W(X)| = " + std::to_string(total) +
                " is too large to materialize; use hpwr for large ranks");
  }
  std::vector<WhiteheadAut> out;
  out.reserve(static_cast<std::size_t>(total));
  std::vector<Action> actions(static_cast<std::size_t>(rank), Action::fix);
  const std::uint64_t tuples = pow4(rank - 1);
  for (int v = 0; v < 2 * rank; ++v) {
    const Letter a = letter_at_vertex(v);
    const int mult_base = base_index(a);
    for (std::uint64_t tuple = 1; tuple < tuples; ++tuple) {
      // Digits of `tuple` in base 4, most significant first over the
      // non-multiplier generators in increasing order.
      std::uint64_t rest = tuple;
      std::uint64_t place = tuples / 4;
      for (int g = 1; g <= rank; ++g) {
        if (g == mult_base) {
          actions[static_cast<std::size_t>(g - 1)] = Action::fix;
          continue;
        }
        actions[static_cast<std::size_t>(g - 1)] = static_cast<Action>(rest / place);
        rest %= place;
        place /= 4;
      }
      out.emplace_back(rank, a, actions);
    }
  }
  return out;
}

std::uint64_t whitehead_enum_index(const WhiteheadAut& t) {
  const int rank = t.rank();
  const std::uint64_t tuples = pow4(rank - 1);
  std::uint64_t tuple = 0;
  for (int g = 1; g <= rank; ++g) {
    if (g == base_index(t.multiplier())) continue;
    tuple = tuple * 4 + static_cast<std::uint64_t>(t.action(g));
  }
  if (tuple == 0) throw std::invalid_argument("whitehead_enum_index: identity is not enumerated");
  return static_cast<std::uint64_t>(vertex_index(t.multiplier())) * (tuples - 1) + (tuple - 1);
}

WhiteheadAut to_whitehead(const NielsenAut& t, int rank) {
  std::vector<Action> actions(static_cast<std::size_t>(rank), Action::fix);
  Letter a;
  if (t.side == NielsenAut::Side::right) {
    // x -> xy is the right action with multiplier y.
    a = t.multiplier;
    actions[static_cast<std::size_t>(t.target - 1)] = Action::right;
  } else {
    // x -> yx equals x -> a^{-1} x with a = y^{-1}.
    a = inverse(t.multiplier);
    actions[static_cast<std::size_t>(t.target - 1)] = Action::left;
  }
  return WhiteheadAut(rank, a, actions);
}

std::vector<std::uint64_t> nielsen_subset_index(int rank) {
  const auto nielsen = enumerate_nielsen(rank);
  std::vector<std::uint64_t> out;
  out.reserve(nielsen.size());
  for (const auto& t : nielsen) {
    out.push_back(whitehead_enum_index(to_whitehead(t, rank)));
  }
  return out;
}

WhiteheadAut inverse(const WhiteheadAut& t) {
  // (a, actions)^{-1} = (a^{-1}, actions): xa -> x a^{-1}, a^{-1}x -> ax,
  // a^{-1}xa -> a x a^{-1}.
  std::vector<Action> actions(static_cast<std::size_t>(t.rank()));
  for (int g = 1; g <= t.rank(); ++g) {
    actions[static_cast<std::size_t>(g - 1)] = t.action(g);
  }
  return WhiteheadAut(t.rank(), inverse(t.multiplier()), actions);
}

WhiteheadAut random_whitehead(int rank, Rng& rng) {
  require_rank_at_least_2(rank, "random_whitehead");
  if (rank > kMaxAutRank) {
    throw std::invalid_argument("random_whitehead: rank exceeds " + std::to_string(kMaxAutRank));
  }
  std::vector<Action> actions(static_cast<std::size_t>(rank));
  for (;;) {
    const Letter a = letter_at_vertex(rng.below_int(2 * rank));
    bool identity = true;
    for (int g = 1; g <= rank; ++g) {
      if (g == base_index(a)) {
        actions[static_cast<std::size_t>(g - 1)] = Action::fix;
        continue;
      }
      const auto act = static_cast<Action>(rng.below_int(4));
      actions[static_cast<std::size_t>(g - 1)] = act;
      if (act != Action::fix) identity = false;
    }
    if (identity) continue;
    return WhiteheadAut(rank, a, actions);
  }
}

std::optional<std::pair<WhiteheadAut, Word>> try_inflate_once(const Word& w, Rng& rng,
                                                              int max_tries) {
  for (int i = 0; i < max_tries; ++i) {
    WhiteheadAut t = random_whitehead(w.rank(), rng);
    Word image = t.apply(w);
    if (image.length() > w.length()) return std::make_pair(std::move(t), std::move(image));
  }
  return std::nullopt;
}

std::pair<WhiteheadAut, Word> inflate_once(const Word& w, Rng& rng, int max_tries) {
  auto hit = try_inflate_once(w, rng, max_tries);
  if (!hit) {
    throw GenerationError("inflate_once: no length-increasing automorphism found in " +
                          std::to_string(max_tries) + " tries for a word of length " +
                          std::to_string(w.length()));
  }
  return std::move(*hit);
}

Word apply(const NielsenAut& t, const Word& w) { return t.apply(w); }
Word apply(const WhiteheadAut& t, const Word& w) { return t.apply(w); }

Word apply_sequence(const AutSequence& seq, const Word& w) {
  Word out = w;
  for (const auto& t : seq) out = t.apply(out);
  return out;
}

std::string to_string(const NielsenAut& t) {
  const std::string x = letter_to_string(t.target);
  const std::string y = letter_to_string(t.multiplier);
  if (t.side == NielsenAut::Side::right) return "N(" + x + "->" + x + "*" + y + ")";
  return "N(" + x + "->" + y + "*" + x + ")";
}

std::string to_string(const WhiteheadAut& t) {
  std::string out = "W(a=" + letter_to_string(t.multiplier());
  for (int g = 1; g <= t.rank(); ++g) {
    if (g == base_index(t.multiplier()) || t.action(g) == Action::fix) continue;
    const char* name = t.action(g) == Action::right  ? "right"
                       : t.action(g) == Action::left ? "left"
                                                     : "conj";
    out += "; " + letter_to_string(g) + ":" + name;
  }
  out += ")";
  return out;
}

NielsenAut parse_nielsen(std::string_view text) {
  const std::string s(text);
  auto fail = [&]() -> NielsenAut {
    throw ParseError("bad Nielsen automorphism '" + s + "' (expected N(x1->x1*x2))");
  };
  if (s.size() < 11 || s.substr(0, 2) != "N(" || s.back() != ')') return fail();
  const std::string body = s.substr(2, s.size() - 3);
  const auto arrow = body.find("->");
  if (arrow == std::string::npos) return fail();
  const std::string lhs = body.substr(0, arrow);
  const std::string rhs = body.substr(arrow + 2);
  const auto star = rhs.find('*');
  if (star == std::string::npos) return fail();
  auto letter = [&](const std::string& tok) -> Letter {
    auto parsed = parse_letters(tok);
    if (parsed.size() != 1) fail();
    return parsed[0];
  };
  const Letter target = letter(lhs);
  if (target < 0) return fail();
  const Letter a = letter(rhs.substr(0, star));
  const Letter b = letter(rhs.substr(star + 1));
  NielsenAut out;
  out.target = target;
  if (a == target) {
    out.multiplier = b;
    out.side = NielsenAut::Side::right;
  } else if (b == target) {
    out.multiplier = a;
    out.side = NielsenAut::Side::left;
  } else {
    return fail();
  }
  if (base_index(out.multiplier) == out.target) return fail();
  return out;
}

}  // namespace whmin

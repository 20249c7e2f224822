#pragma once

#include <cstdint>
#include <random>

namespace whmin {

struct Seed {
  std::uint64_t value = 0;
};

// splitmix64 step; used to derive independent per-item streams from one seed.
constexpr std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

// Stream seed for item `index` of a batch; stable under any execution order.
constexpr Seed derive_seed(Seed base, std::uint64_t index) {
  return Seed{splitmix64(splitmix64(base.value) ^ splitmix64(index + 0x632be59bd9b4e019ULL))};
}

// mt19937_64 plus hand-rolled bounded draws, so streams never depend on the
// standard library's distribution internals.
class Rng {
 public:
  explicit Rng(Seed seed) : engine_(seed.value) {}

  std::uint64_t next() { return engine_(); }

  // Uniform in [0, bound); bound > 0. Rejection sampling keeps it unbiased.
  std::uint64_t below(std::uint64_t bound) {
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound + 1) % bound;
    std::uint64_t draw;
    do {
      draw = engine_();
    } while (draw > limit);
    return draw % bound;
  }

  int below_int(int bound) { return static_cast<int>(below(static_cast<std::uint64_t>(bound))); }

  // Integer uniform in [lo, hi] inclusive.
  int range_int(int lo, int hi) { return lo + below_int(hi - lo + 1); }

  // Uniform in [0, 1) with 53 random bits.
  double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

 private:
  std::mt19937_64 engine_;
};

}  // namespace whmin

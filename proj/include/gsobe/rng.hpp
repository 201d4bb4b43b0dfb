#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>

namespace gsobe {

/// Deterministic generator (splitmix64 core). All randomness in the lab flows
/// from one seed; per-sample streams are derived with fork() so results are
/// reproducible independent of evaluation order or thread count.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed), root_(seed) {}

  std::uint64_t next_u64() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  /// Uniform in [0, 1).
  double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  /// Standard normal via Box-Muller (no hidden state, bit-stable across stdlibs).
  double normal() {
    double u1 = uniform(), u2 = uniform();
    while (u1 <= 0.0) u1 = uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
  }

  int uniform_int(int lo, int hi) {  // inclusive bounds
    return lo + static_cast<int>(next_u64() % static_cast<std::uint64_t>(hi - lo + 1));
  }

  /// Independent stream for sample `id`, derived from the root seed only.
  Rng fork(std::uint64_t id) const {
    Rng r(root_ ^ (0x9e3779b97f4a7c15ull * (id + 1)));
    r.next_u64();
    return r;
  }

 private:
  std::uint64_t state_;
  std::uint64_t root_;
};

}  // namespace gsobe

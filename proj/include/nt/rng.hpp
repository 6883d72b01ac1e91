#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>

namespace nt {

// Counter-based generator: draw i is mix(seed + (i + 1) * golden), where mix is
// the splitmix64 finalizer. Any draw can be recomputed from (seed, i) alone.
class CounterRng {
 public:
  static constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

  explicit CounterRng(std::uint64_t seed, std::uint64_t counter = 0)
      : seed_(seed), counter_(counter) {}

  static constexpr std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  static constexpr std::uint64_t at(std::uint64_t seed, std::uint64_t i) {
    return mix(seed + (i + 1) * kGolden);
  }

  std::uint64_t next() { return at(seed_, counter_++); }

  // Uniform on [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

  // Integer uniform on [lo, hi] by rejection-free multiply-shift.
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    const auto span = static_cast<unsigned __int128>(hi - lo + 1);
    return lo + static_cast<std::int64_t>((span * next()) >> 64);
  }

  // Uniform point of the closed unit disc: radius sqrt(u), angle 2 pi v.
  std::complex<double> unit_disc() {
    const double r = std::sqrt(uniform());
    const double a = 2.0 * std::numbers::pi * uniform();
    return std::polar(r, a);
  }

  std::uint64_t seed() const { return seed_; }
  std::uint64_t counter() const { return counter_; }

 private:
  std::uint64_t seed_;
  std::uint64_t counter_;
};

}  // namespace nt

#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "nt/arith.hpp"
#include "nt/dirichlet.hpp"
#include "nt/multfun.hpp"

namespace nt {

inline constexpr double kMinSigma = 1.0 + 1e-9;

class HalfPlanePoint {
 public:
  HalfPlanePoint(double sigma, double t);
  double sigma() const { return sigma_; }
  double t() const { return t_; }
  cplx s() const { return {sigma_, t_}; }

 private:
  double sigma_;
  double t_;
};

struct BoundedValue {
  cplx value{};
  double bound = 0.0;  // correction or tail bound carried next to the value
};

// sum_{lo < p <= hi} g(p) chi(p) p^{-s}; bound = sum_{lo < p <= hi} p^{-2} + 1/lo.
BoundedValue log_G_prime_sum(const MF& g, const Character& chi, std::int64_t lo, std::int64_t hi,
                             const HalfPlanePoint& s, const PrimeTable& table);

// sum_{n <= x} g(n) chi(n) n^{-s}; bound = x^{1 - sigma} / (sigma - 1).
BoundedValue G_truncated(const MF& g, const Character& chi, const HalfPlanePoint& s, std::int64_t x,
                         const PrimeTable& table);

// Largest T allowed by the exceptional-character definition.
double classifier_T_max(std::int64_t D, double x, double alpha);

struct SemiStripGrid {
  std::int64_t D = 2;
  std::int64_t x = 4;
  double T = 0.0;
  double sigma = 0.0;
  double dt = 0.0;
  std::int64_t half_steps = 0;          // t_k = k dt for |k| <= half_steps
  std::vector<std::int64_t> endpoints;  // D = e_0 < ... < e_m = x

  // sigma = 1 + 1/log x, dt = T / ceil(T log x), m geometric endpoints rounded down.
  static SemiStripGrid make(std::int64_t D, std::int64_t x, double T, int m = 64);
  std::size_t t_count() const { return static_cast<std::size_t>(2 * half_steps + 1); }
  double t_at(std::size_t k) const {
    return (static_cast<double>(k) - static_cast<double>(half_steps)) * dt;
  }
};

struct ClassifiedCharacter {
  Character chi;
  double max_logG = 0.0;
  double t_at_max = 0.0;
  std::int64_t lo = 0, hi = 0;  // interval attaining the max
  bool exceptional = false;
};

struct ExceptionalReport {
  std::int64_t D = 2;
  std::int64_t x = 4;
  double alpha = 0.5;
  double T = 0.0;
  double threshold = 0.0;  // alpha log(log x / log D) + slack
  double slack = 1.0;
  double correction = 0.0;  // sum_{D < p <= x} p^{-2} + 1/D
  SemiStripGrid grid;
  std::vector<ClassifiedCharacter> characters;  // nonprincipal, enumeration order
  std::vector<Character> J;
  struct PairOrder {
    std::size_t i, j;  // character indices
    std::int64_t order;
  };
  std::vector<PairOrder> pair_orders;  // chi_i conj(chi_j), i < j in J
};

// Maximum of |sum_{p in I} g(p) chi(p) p^{-s}| over the grid, per nonprincipal chi.
ExceptionalReport classify_exceptional(const MF& g, std::int64_t D, std::int64_t x, double alpha,
                                       const SemiStripGrid& grid, const PrimeTable& table,
                                       double slack = 1.0);

// Per-character grid maxima (no threshold), for explicit weights on primes in
// (grid.D, grid.x]. Used by the classifier and the calibration scans.
std::vector<ClassifiedCharacter> grid_maxima(std::span<const cplx> prime_weights,
                                             const CharacterGroup& group,
                                             std::span<const Character> chars,
                                             const SemiStripGrid& grid, const PrimeTable& table);

struct Diameter {
  double length = 0.0;
  std::size_t i = 0, j = 0;  // i < j
};
// Largest pairwise distance among points in the plane (hull + rotating calipers).
Diameter point_set_diameter(std::span<const cplx> pts);

struct PlancherelResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double tail = 0.0;        // included in lhs
  double quad_error = 0.0;  // accumulated Gauss-Kronrod estimate
};
// f[n] for 1 <= n < f.size() (at most 1000 terms).
PlancherelResult plancherel_check(std::span<const cplx> f, double sigma, double T_int = 2000.0);

}  // namespace nt

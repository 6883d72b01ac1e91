#pragma once

// Hot loops. Each parallel kernel has a serial reference in kernels_serial.cpp
// used by the tests and the benchmark.

#include <omp.h>

#include <algorithm>
#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "nt/dirichlet.hpp"

namespace nt::kernels {

// Prime sums of w_p p^{-it}, split by residue class mod D and by segment
// (e_{j-1}, e_j], evaluated on the uniform grid t_k = t0 + k dt.
struct ClassScanSpec {
  std::int64_t D = 1;
  std::span<const std::uint32_t> primes;    // ascending, inside (e_0, e_m]
  std::span<const cplx> weights;            // one per prime
  std::span<const std::int64_t> endpoints;  // e_0 < ... < e_m
  double t0 = 0.0;
  double dt = 0.0;
  std::size_t nt = 1;
};

// Class-prefix sums at one t: rows j = 0..m, columns = reduced classes in
// ascending order. Row j sums primes p <= e_j. Primes dividing D are dropped.
struct ClassPrefix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> re;
  std::vector<double> im;
  double real(std::size_t j, std::size_t c) const { return re[j * cols + c]; }
  double imag(std::size_t j, std::size_t c) const { return im[j * cols + c]; }
};

// Steps between exact re-anchoring of the phase recurrence.
inline constexpr std::size_t kAnchorStride = 512;

class ClassScanner {
 public:
  explicit ClassScanner(const ClassScanSpec& spec);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::size_t steps() const { return nt_; }
  double t_at(std::size_t k) const { return t0_ + static_cast<double>(k) * dt_; }

  struct State {
    std::vector<double> zr, zi;  // w_p p^{-it} at the current t
  };
  State make_state() const;
  // Exact evaluation at t_k.
  void anchor(State& s, std::size_t k) const;
  // Segment sums at the current t, cumulated into prefix rows.
  void accumulate(const State& s, ClassPrefix& out) const;
  // Multiply every phase by p^{-i dt}.
  void advance(State& s) const;

 private:
  std::size_t rows_ = 0, cols_ = 0, nt_ = 0;
  double t0_ = 0.0, dt_ = 0.0;
  // Primes regrouped by class, then ascending. seg_start_[c * rows_ + j] is the
  // first slot of class c whose prime exceeds e_{j-1}... see kernels.cpp.
  std::vector<std::size_t> seg_;
  std::vector<double> logp_, wr_, wi_, step_r_, step_i_;
};

// Run fn(k, t, prefix) for every grid step, in parallel over blocks of
// kAnchorStride steps. Results come back in step order and do not depend on
// the thread count.
template <class Fn>
auto scan_classes(const ClassScanSpec& spec, Fn&& fn)
    -> std::vector<decltype(fn(std::size_t{}, 0.0, std::declval<const ClassPrefix&>()))> {
  using Summary = decltype(fn(std::size_t{}, 0.0, std::declval<const ClassPrefix&>()));
  const ClassScanner scanner(spec);
  const std::size_t nt = scanner.steps();
  std::vector<Summary> out(nt);
  const std::size_t blocks = (nt + kAnchorStride - 1) / kAnchorStride;
#pragma omp parallel
  {
    auto state = scanner.make_state();
    ClassPrefix prefix;
#pragma omp for schedule(dynamic, 1)
    for (std::size_t b = 0; b < blocks; ++b) {
      const std::size_t k0 = b * kAnchorStride;
      const std::size_t k1 = std::min(nt, k0 + kAnchorStride);
      scanner.anchor(state, k0);
      for (std::size_t k = k0; k < k1; ++k) {
        scanner.accumulate(state, prefix);
        out[k] = fn(k, scanner.t_at(k), prefix);
        if (k + 1 < k1) scanner.advance(state);
      }
    }
  }
  return out;
}

// Character values over the compact reduced classes, stored class-major so the
// transform inner loop runs over characters.
struct CharacterMatrix {
  std::size_t nchars = 0;
  std::size_t cols = 0;
  std::vector<double> re;  // [c * nchars + i]
  std::vector<double> im;
};
CharacterMatrix character_matrix(const CharacterGroup& group, std::span<const Character> chars);

// S[j * nchars + i] = sum_c chi_i(c) P[j][c].
void to_characters(const CharacterMatrix& chi, const ClassPrefix& p, std::vector<double>& s_re,
                   std::vector<double>& s_im);
void to_characters_real(const CharacterMatrix& chi, const ClassPrefix& p, std::vector<double>& s_re);

// Per-step character prefix sums, S[k][j * nchars + i]; built on scan_classes.
std::vector<std::vector<cplx>> character_prefix(const ClassScanSpec& spec,
                                                const CharacterGroup& group,
                                                std::span<const Character> chars);
// Serial reference: direct evaluation per (chi, t, p).
std::vector<std::vector<cplx>> character_prefix_serial(const ClassScanSpec& spec,
                                                       std::span<const Character> chars);

// F(t) = sum_p (|g_p| - Re g_p p^{it}) / p for each t, ascending primes per t.
struct LambdaPrimes {
  std::vector<double> abs_g, re_g, im_g, logp, inv_p;
};
std::vector<double> lambda_values(const LambdaPrimes& primes, std::span<const double> ts);
std::vector<double> lambda_values_serial(const LambdaPrimes& primes, std::span<const double> ts);

// S(a) = sum_{n <= x, n = a mod D} f(n) for every class a in [0, D).
std::vector<cplx> class_sums(std::span<const cplx> f, std::int64_t D, std::int64_t x);
std::vector<cplx> class_sums_serial(std::span<const cplx> f, std::int64_t D, std::int64_t x);

// max_{v <= V} |sum_{n <= v} chi(n)| for each character.
std::vector<double> max_partial_sums(std::span<const Character> chars, std::int64_t V);
std::vector<double> max_partial_sums_serial(std::span<const Character> chars, std::int64_t V);

}  // namespace nt::kernels

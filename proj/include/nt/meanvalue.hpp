#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "nt/arith.hpp"
#include "nt/dirichlet.hpp"
#include "nt/multfun.hpp"

namespace nt {

// All functionals read a value array f with f[n] for 1 <= n <= x (f[0] unused),
// as produced by batch_evaluate.
using Values = std::span<const cplx>;

cplx partial_sum_M(Values f, std::int64_t x);
cplx partial_sum_N(Values f, std::int64_t x);  // sum f(n) log n

// sum_{n <= x} f(n) chi(n)
cplx character_sum(Values f, const Character& chi, std::int64_t x);

struct ProgressionSums {
  std::int64_t D = 1;
  std::int64_t x = 0;
  std::vector<cplx> by_class;  // index a in [0, D); zero for non-reduced a
  cplx coprime_total{};
  cplx at(std::int64_t a) const {
    return by_class[static_cast<std::size_t>(((a % D) + D) % D)];
  }
};
ProgressionSums progression_sums(Values f, std::int64_t D, std::int64_t x);

// sum_{n <= x, n = a} f(n) - sum_{chi in J} conj(chi(a)) / phi(D) * sum_{n <= x} f(n) chi(n)
cplx Y(Values f, std::int64_t a, std::int64_t x, std::int64_t D, std::span<const Character> J);

struct IdentityCheck {
  double lhs = 0.0;
  double rhs = 0.0;
};
// b[n] for 1 <= n < b.size(). lhs = phi(D) sum_a |L(a)|^2 over reduced a,
// rhs = sum_{j not in J} |B_j|^2. J holds character indices.
IdentityCheck lemma_I5_check(Values b, const CharacterGroup& group,
                             std::span<const std::size_t> J);

struct ExceptionalTerm {
  Character chi;
  cplx value;  // conj(chi(a)) / phi(D) * sum_{n <= y} g(n) chi(n)
};

struct DecompositionReport {
  std::int64_t y = 0, D = 1, a = 1;
  double alpha = 0.5;
  cplx progression_sum{};
  cplx principal_term{};
  std::vector<ExceptionalTerm> exceptional;
  cplx residual{};
  double envelope = 0.0;
  double simplified_envelope = 0.0;
};

// g holds values up to y. Principal character never belongs to J.
DecompositionReport theorem1_decompose(Values g, std::int64_t a, std::int64_t y,
                                       const CharacterGroup& group, std::span<const Character> J,
                                       double alpha, const PrimeTable& table);

// y / (phi(D) log y) * prod_{p <= D, (p, D) = 1} (1 + |g(p)|/p) * (log y / log D)^alpha
double theorem1_envelope(Values g, std::int64_t y, std::int64_t D, double alpha,
                         const PrimeTable& table);

struct RatioCheck {
  double lhs = 0.0;
  double rhs_shape = 0.0;
  double ratio = 0.0;
};

// Shiu-type bound: lhs = sum_{n <= x, n = a} h(n);
// rhs = x / (phi(D) log x) exp(sum_{p <= x, (p, D) = 1} h(p) / p).
RatioCheck shiu_bound_check(const MF& h, std::int64_t a, std::int64_t D, std::int64_t x,
                            const PrimeTable& table);

// Exponentially multiplicative g, 0 <= g(p) <= 1 for p <= Ylim, else 0:
// lhs = sum_{w < n <= x, n = a} g(n);
// rhs = x / (phi(D) log x) exp(sum_{p <= Y, (p,D)=1} g(p)/p) exp(-log w / log Y).
RatioCheck exponential_tail_check(const MF& g, std::int64_t w, std::int64_t x, double Ylim,
                                  std::int64_t a, std::int64_t D, const PrimeTable& table);

// g real in [0, 1], zero on primes p > Ylim, D^11 <= w <= x:
// lhs = sum_{w < n <= x, n = a} g(n);
// rhs = x / (phi(D) log w) prod_{p <= Y, (p,D)=1} (1 + g(p)/p) exp(-log w / (10 log Y)).
RatioCheck truncated_decay_check(const MF& g, std::int64_t w, std::int64_t x, double Ylim,
                                 std::int64_t a, std::int64_t D, const PrimeTable& table);

struct LogarithmicReport {
  double w = 0.0, y = 0.0, r = 0.0;
  double lhs = 0.0;          // |N(w, g)|
  double integral_term = 0.0;  // w * int_2^w |N(u)| / (u^2 log u) du
  double short_term = 0.0;   // sum_{d <= (log w)^{2r}} d Lambda(d) |g(d)| / (w - y) int_{y/d}^{w/d} |M(u)| du
  double e0 = 0.0;           // max_{y <= t <= w} |sum_{y < n <= t} g(n) log n|
  double ratio = 0.0;        // lhs / (sum of the three)
};
// g must be completely or exponentially multiplicative with values up to w.
LogarithmicReport logarithmic_mean_check(const MF& g, std::int64_t w, double r,
                                         const PrimeTable& table);

struct L2Report {
  std::int64_t D = 2;
  std::int64_t t = 0;
  double x = 0.0;
  double delta = 0.0;
  double lhs = 0.0;   // sum_{chi not in J} max_{2 <= y <= t} |sum_{n <= y} g chi|^2
  double rhs = 0.0;   // (t / log t)^2 (log x / log D)^delta
  double ratio = 0.0;
  double residue_form = 0.0;  // phi(D) sum_a |Y(g, a, t)|^2
};
L2Report l2_mean_square(Values g, const CharacterGroup& group, std::span<const std::size_t> J,
                        std::int64_t t, double x, double delta);

}  // namespace nt

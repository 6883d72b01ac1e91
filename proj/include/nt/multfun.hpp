#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "nt/arith.hpp"
#include "nt/dirichlet.hpp"

namespace nt {

enum class Mode { general, completely, exponentially };

const char* to_string(Mode m);

// (p, k) -> g(p^k). In completely / exponentially mode only k = 1 is consulted.
using PrimePowerRule = std::function<cplx(std::int64_t p, int k)>;

inline constexpr int kMaxFactorialExponent = 170;

class MultiplicativeFunction {
 public:
  MultiplicativeFunction(Mode mode, PrimePowerRule rule, bool unit_disc = true,
                         std::string name = "custom");

  Mode mode() const { return mode_; }
  bool unit_disc() const { return unit_disc_; }
  const std::string& name() const { return name_; }
  const PrimePowerRule& rule() const { return rule_; }

  // g(p^k) after applying the mode; checks the unit-disc contract.
  cplx at_prime_power(std::int64_t p, int k) const;
  cplx at_prime(std::int64_t p) const { return at_prime_power(p, 1); }

 private:
  Mode mode_;
  PrimePowerRule rule_;
  bool unit_disc_;
  std::string name_;
};

using MF = MultiplicativeFunction;

// Product of g(p^k) over the factorization, folded from the largest prime down.
cplx evaluate(const MF& g, std::int64_t n, const PrimeTable& table);

// values[n] = g(n) for 1 <= n <= x; values[0] = 0. Bit-identical to evaluate().
std::vector<cplx> batch_evaluate(const MF& g, std::int64_t x, const PrimeTable& table);

// n -> g(n) chi(n) n^{it}, same mode.
MF twist(const MF& g, const Character& chi, double t);

// (g mu)(p^k) = g(p^k) mu(p^k), general mode.
MF braid_mobius(const MF& g);

struct ConvolutionPair {
  MF left;
  MF right;
  MF target;
  std::int64_t verified_up_to = 0;
  double max_error = 0.0;
};

inline constexpr std::int64_t kSplitVerifyBound = 10'000;

// f keeps the powers of p > cutoff, h those of p <= cutoff.
ConvolutionPair split_head_tail(const MF& g, double cutoff, const PrimeTable& table);
// l(p^k) = g(p)^k, r(p^k) = g(p^k) - g(p) g(p^{k-1}).
ConvolutionPair split_completely_multiplicative(const MF& g, const PrimeTable& table);
// l(p^k) = g(p)^k / k!, r(p^k) = sum_j (-g(p))^j / j! g(p^{k-j}).
ConvolutionPair split_exponential(const MF& g, const PrimeTable& table);

// c[n] = sum_{d | n} a[d] b[n/d] for 1 <= n < size; index 0 unused.
std::vector<cplx> dirichlet_convolve(std::span<const cplx> a, std::span<const cplx> b);

// Built-ins.
MF one();
MF mobius();
MF mobius_tail(std::int64_t D);  // mu(n) when every p | n exceeds D, else 0
MF unit_tail(std::int64_t D);    // 1 when every p | n exceeds D, else 0
MF random_unitdisc(std::uint64_t seed);
MF random_sign(std::uint64_t seed);        // completely multiplicative, g(p) = +-1
MF random_unit_interval(std::uint64_t seed);  // g(p^k) in [0, 1], general mode

// "one", "mobius", "mobius-tail(5)", "unit-tail(5)", "random-unitdisc(42)", ...
MF parse_builtin(const std::string& spec);

double factorial(int k);

}  // namespace nt

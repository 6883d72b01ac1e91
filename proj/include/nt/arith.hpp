#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace nt {

inline constexpr std::int64_t kMaxTableBound = 200'000'000;

struct PrimePower {
  std::int64_t p;
  int k;
};

// Smallest-prime-factor table on [0, bound] with the ascending prime list.
// Immutable after construction.
class PrimeTable {
 public:
  explicit PrimeTable(std::int64_t bound);

  std::int64_t bound() const { return bound_; }
  std::span<const std::uint32_t> primes() const { return primes_; }

  // spf(n) for 2 <= n <= bound.
  std::int64_t spf(std::int64_t n) const { return spf_[static_cast<std::size_t>(n)]; }
  bool is_prime(std::int64_t n) const { return n >= 2 && n <= bound_ && spf(n) == n; }

  // Number of primes <= y (y may exceed nothing beyond bound).
  std::int64_t pi(std::int64_t y) const;

  // Index range [first, last) of primes in (lo, hi].
  std::pair<std::size_t, std::size_t> prime_range(std::int64_t lo, std::int64_t hi) const;

  // Ascending-prime factorization of 1 <= n <= bound.
  std::vector<PrimePower> factorize(std::int64_t n) const;

 private:
  std::int64_t bound_;
  std::vector<std::uint32_t> spf_;
  std::vector<std::uint32_t> primes_;
};

PrimeTable build_prime_table(std::int64_t x);

// Sum of 1/p over primes D < p <= x, ascending.
double prime_reciprocal_sum(const PrimeTable& table, std::int64_t D, std::int64_t x);

struct ArithValues {
  std::vector<std::int8_t> mobius;
  std::vector<double> von_mangoldt;
  std::vector<std::int64_t> euler_phi;
  std::vector<std::uint8_t> omega;
};

// Tables indexed by n in [0, bound]; entry 0 is unused.
ArithValues arith_values(const PrimeTable& table);

// Totient by trial division, independent of any table.
std::int64_t euler_phi(std::int64_t n);

// Distinct prime factors by trial division, ascending.
std::vector<std::int64_t> prime_divisors(std::int64_t n);

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t mod);
std::int64_t mod_inverse(std::int64_t a, std::int64_t mod);

}  // namespace nt

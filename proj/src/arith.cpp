#include "nt/arith.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>
#include <tuple>

#include "nt/error.hpp"

namespace nt {

PrimeTable::PrimeTable(std::int64_t bound) : bound_(bound) {
  if (bound < 2) throw DomainError("prime table bound must be at least 2");
  if (bound > kMaxTableBound)
    throw ResourceError("prime table bound " + std::to_string(bound) + " exceeds " +
                        std::to_string(kMaxTableBound));
  spf_.assign(static_cast<std::size_t>(bound) + 1, 0);
  primes_.reserve(static_cast<std::size_t>(1.3 * bound / std::log(double(bound))) + 16);
  // Linear sieve: each composite is struck once, by its smallest prime factor.
  for (std::int64_t i = 2; i <= bound; ++i) {
    if (spf_[i] == 0) {
      spf_[i] = static_cast<std::uint32_t>(i);
      primes_.push_back(static_cast<std::uint32_t>(i));
    }
    const std::uint32_t si = spf_[i];
    for (const std::uint32_t p : primes_) {
      if (p > si || static_cast<std::int64_t>(p) * i > bound) break;
      spf_[static_cast<std::size_t>(p * i)] = p;
    }
  }
  primes_.shrink_to_fit();
}

std::int64_t PrimeTable::pi(std::int64_t y) const {
  if (y < 2) return 0;
  return std::upper_bound(primes_.begin(), primes_.end(),
                          static_cast<std::uint32_t>(std::min(y, bound_))) -
         primes_.begin();
}

std::pair<std::size_t, std::size_t> PrimeTable::prime_range(std::int64_t lo,
                                                            std::int64_t hi) const {
  const auto first = static_cast<std::size_t>(pi(lo));
  const auto last = static_cast<std::size_t>(pi(hi));
  return {first, std::max(first, last)};
}

std::vector<PrimePower> PrimeTable::factorize(std::int64_t n) const {
  if (n < 1 || n > bound_) throw DomainError("factorize: n out of table range");
  std::vector<PrimePower> out;
  while (n > 1) {
    const std::int64_t p = spf(n);
    int k = 0;
    while (n % p == 0) {
      n /= p;
      ++k;
    }
    out.push_back({p, k});
  }
  return out;
}

PrimeTable build_prime_table(std::int64_t x) { return PrimeTable(x); }

double prime_reciprocal_sum(const PrimeTable& table, std::int64_t D, std::int64_t x) {
  if (D < 2 || x < D || x > table.bound())
    throw DomainError("prime_reciprocal_sum requires 2 <= D <= x <= bound");
  const auto [first, last] = table.prime_range(D, x);
  const auto primes = table.primes();
  double s = 0.0;
  for (std::size_t i = first; i < last; ++i) s += 1.0 / primes[i];
  return s;
}

ArithValues arith_values(const PrimeTable& table) {
  const auto n_max = static_cast<std::size_t>(table.bound());
  ArithValues v;
  v.mobius.assign(n_max + 1, 0);
  v.von_mangoldt.assign(n_max + 1, 0.0);
  v.euler_phi.assign(n_max + 1, 0);
  v.omega.assign(n_max + 1, 0);
  v.mobius[1] = 1;
  v.euler_phi[1] = 1;
  for (std::size_t n = 2; n <= n_max; ++n) {
    const auto p = static_cast<std::size_t>(table.spf(static_cast<std::int64_t>(n)));
    const std::size_t m = n / p;
    if (m % p == 0) {
      v.mobius[n] = 0;
      v.euler_phi[n] = v.euler_phi[m] * static_cast<std::int64_t>(p);
      v.omega[n] = v.omega[m];
    } else {
      v.mobius[n] = static_cast<std::int8_t>(-v.mobius[m]);
      v.euler_phi[n] = v.euler_phi[m] * static_cast<std::int64_t>(p - 1);
      v.omega[n] = static_cast<std::uint8_t>(v.omega[m] + 1);
    }
    std::size_t r = n;
    while (r % p == 0) r /= p;
    if (r == 1) v.von_mangoldt[n] = std::log(static_cast<double>(p));
  }
  return v;
}

std::vector<std::int64_t> prime_divisors(std::int64_t n) {
  std::vector<std::int64_t> out;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out.push_back(p);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::int64_t euler_phi(std::int64_t n) {
  if (n < 1) throw DomainError("euler_phi requires n >= 1");
  std::int64_t r = n;
  for (const auto p : prime_divisors(n)) r = r / p * (p - 1);
  return r;
}

std::int64_t mod_pow(std::int64_t base, std::int64_t exp, std::int64_t mod) {
  if (mod == 1) return 0;
  unsigned __int128 result = 1;
  unsigned __int128 b = static_cast<unsigned __int128>(((base % mod) + mod) % mod);
  while (exp > 0) {
    if (exp & 1) result = result * b % mod;
    b = b * b % mod;
    exp >>= 1;
  }
  return static_cast<std::int64_t>(result);
}

std::int64_t mod_inverse(std::int64_t a, std::int64_t mod) {
  std::int64_t g = mod, x = 0, x1 = 1, a1 = ((a % mod) + mod) % mod;
  while (a1 != 0) {
    const std::int64_t q = g / a1;
    std::tie(g, a1) = std::make_pair(a1, g - q * a1);
    std::tie(x, x1) = std::make_pair(x1, x - q * x1);
  }
  if (g != 1) throw DomainError("mod_inverse: not invertible");
  return ((x % mod) + mod) % mod;
}

}  // namespace nt

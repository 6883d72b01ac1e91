#pragma once
// Brute-force references. Deliberately naive: trial division, direct sums,
// no shared code with the library.
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <vector>

namespace oracle {

using cplx = std::complex<double>;

inline bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

inline std::vector<std::int64_t> primes_upto(std::int64_t x) {
  std::vector<std::int64_t> out;
  for (std::int64_t n = 2; n <= x; ++n)
    if (is_prime(n)) out.push_back(n);
  return out;
}

inline int mobius(std::int64_t n) {
  int s = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p) continue;
    n /= p;
    if (n % p == 0) return 0;
    s = -s;
  }
  return n > 1 ? -s : s;
}

inline double von_mangoldt(std::int64_t n) {
  for (std::int64_t p = 2; p <= n; ++p) {
    if (n % p) continue;
    while (n % p == 0) n /= p;
    return n == 1 ? std::log(static_cast<double>(p)) : 0.0;
  }
  return 0.0;
}

inline std::int64_t phi(std::int64_t n) {
  std::int64_t c = 0;
  for (std::int64_t k = 1; k <= n; ++k)
    if (std::gcd(k, n) == 1) ++c;
  return c;
}

// sum of 1/p for lo < p <= hi in long double, largest terms last.
inline long double reciprocal_sum(std::int64_t lo, std::int64_t hi) {
  long double s = 0.0L;
  for (std::int64_t n = hi; n > lo; --n)
    if (is_prime(n)) s += 1.0L / static_cast<long double>(n);
  return s;
}

}  // namespace oracle

#include <cmath>

#include "nt/kernels.hpp"

namespace nt::kernels {

std::vector<std::vector<cplx>> character_prefix_serial(const ClassScanSpec& spec,
                                                       std::span<const Character> chars) {
  const std::size_t rows = spec.endpoints.size();
  const std::size_t n = chars.size();
  std::vector<std::vector<cplx>> out(spec.nt, std::vector<cplx>(rows * n));
  for (std::size_t k = 0; k < spec.nt; ++k) {
    const double t = spec.t0 + static_cast<double>(k) * spec.dt;
    for (std::size_t i = 0; i < n; ++i) {
      cplx run{};
      std::size_t q = 0;
      for (std::size_t j = 1; j < rows; ++j) {
        for (; q < spec.primes.size() && spec.primes[q] <= spec.endpoints[j]; ++q) {
          const double lp = std::log(static_cast<double>(spec.primes[q]));
          run += spec.weights[q] * chars[i](spec.primes[q]) * std::polar(1.0, -t * lp);
        }
        out[k][j * n + i] = run;
      }
    }
  }
  return out;
}

std::vector<double> lambda_values_serial(const LambdaPrimes& primes, std::span<const double> ts) {
  std::vector<double> out(ts.size());
  for (std::size_t k = 0; k < ts.size(); ++k) {
    const double t = ts[k];
    double f = 0.0;
    for (std::size_t i = 0; i < primes.logp.size(); ++i) {
      const double a = t * primes.logp[i];
      f += (primes.abs_g[i] - (primes.re_g[i] * std::cos(a) - primes.im_g[i] * std::sin(a))) *
           primes.inv_p[i];
    }
    out[k] = f;
  }
  return out;
}

std::vector<cplx> class_sums_serial(std::span<const cplx> f, std::int64_t D, std::int64_t x) {
  std::vector<cplx> s(static_cast<std::size_t>(D));
  for (std::int64_t n = 1; n <= x; ++n) s[static_cast<std::size_t>(n % D)] += f[static_cast<std::size_t>(n)];
  return s;
}

std::vector<double> max_partial_sums_serial(std::span<const Character> chars, std::int64_t V) {
  std::vector<double> out;
  out.reserve(chars.size());
  for (const auto& chi : chars) {
    cplx s{};
    double best = 0.0;
    for (std::int64_t n = 1; n <= V; ++n) {
      s += chi(n);
      best = std::max(best, std::abs(s));
    }
    out.push_back(best);
  }
  return out;
}

}  // namespace nt::kernels

#include "nt/multfun.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <exception>
#include <numbers>
#include <regex>

#include "nt/error.hpp"
#include "nt/rng.hpp"

namespace nt {

namespace {

const std::array<double, kMaxFactorialExponent + 1>& factorial_table() {
  static const auto table = [] {
    std::array<double, kMaxFactorialExponent + 1> t{};
    t[0] = 1.0;
    for (int k = 1; k <= kMaxFactorialExponent; ++k) t[k] = t[k - 1] * k;
    return t;
  }();
  return table;
}

cplx ipow(cplx z, int k) {
  cplx r{1.0, 0.0};
  for (int i = 0; i < k; ++i) r *= z;
  return r;
}

std::uint64_t prime_power_key(std::int64_t p, int k) {
  return static_cast<std::uint64_t>(p) * 64u + static_cast<std::uint64_t>(k);
}

}  // namespace

const char* to_string(Mode m) {
  switch (m) {
    case Mode::general: return "general";
    case Mode::completely: return "completely";
    case Mode::exponentially: return "exponentially";
  }
  return "?";
}

double factorial(int k) {
  if (k < 0 || k > kMaxFactorialExponent)
    throw DomainError("factorial argument outside [0, 170]");
  return factorial_table()[static_cast<std::size_t>(k)];
}

MultiplicativeFunction::MultiplicativeFunction(Mode mode, PrimePowerRule rule, bool unit_disc,
                                               std::string name)
    : mode_(mode), rule_(std::move(rule)), unit_disc_(unit_disc), name_(std::move(name)) {}

cplx MultiplicativeFunction::at_prime_power(std::int64_t p, int k) const {
  if (k == 0) return {1.0, 0.0};
  cplx v;
  switch (mode_) {
    case Mode::general: v = rule_(p, k); break;
    case Mode::completely: v = ipow(rule_(p, 1), k); break;
    case Mode::exponentially: v = ipow(rule_(p, 1), k) / factorial(k); break;
  }
  if (unit_disc_ && std::abs(v) > 1.0 + 1e-12)
    throw ContractError(name_ + ": |g(" + std::to_string(p) + "^" + std::to_string(k) +
                        ")| exceeds 1");
  return v;
}

cplx evaluate(const MF& g, std::int64_t n, const PrimeTable& table) {
  if (n < 1 || n > table.bound()) throw DomainError("evaluate: n outside [1, bound]");
  const auto f = table.factorize(n);
  cplx acc{1.0, 0.0};
  for (std::size_t i = f.size(); i-- > 0;) {
    const cplx v = g.at_prime_power(f[i].p, f[i].k);
    acc = (i + 1 == f.size()) ? v : v * acc;
  }
  return acc;
}

std::vector<cplx> batch_evaluate(const MF& g, std::int64_t x, const PrimeTable& table) {
  if (x > table.bound()) throw DomainError("batch_evaluate: x exceeds table bound");
  if (x < 1) return std::vector<cplx>(1);
  std::vector<cplx> v(static_cast<std::size_t>(x) + 1);
  const auto primes = table.primes();
  const auto [p0, p1] = table.prime_range(1, x);
  // Phase 1: prime powers (parallel over primes, each writes its own slots).
  std::exception_ptr err;
#pragma omp parallel for schedule(dynamic, 256)
  for (std::size_t i = p0; i < p1; ++i) {
    try {
      const std::int64_t p = primes[i];
      std::int64_t q = p;
      for (int k = 1;; ++k) {
        v[static_cast<std::size_t>(q)] = g.at_prime_power(p, k);
        if (q > x / p) break;
        q *= p;
      }
    } catch (...) {
#pragma omp critical
      if (!err) err = std::current_exception();
    }
  }
  if (err) std::rethrow_exception(err);
  v[1] = {1.0, 0.0};
  // Phase 2: composites as a right fold over the ascending factorization.
#pragma omp parallel for schedule(static, 4096)
  for (std::int64_t n = 2; n <= x; ++n) {
    std::int64_t m = n;
    std::array<std::int64_t, 16> pk{};
    int count = 0;
    while (m > 1) {
      const std::int64_t p = table.spf(m);
      std::int64_t q = 1;
      while (m % p == 0) {
        m /= p;
        q *= p;
      }
      pk[static_cast<std::size_t>(count++)] = q;
    }
    if (count == 1) continue;
    cplx acc = v[static_cast<std::size_t>(pk[static_cast<std::size_t>(count - 1)])];
    for (int i = count - 2; i >= 0; --i) acc = v[static_cast<std::size_t>(pk[static_cast<std::size_t>(i)])] * acc;
    v[static_cast<std::size_t>(n)] = acc;
  }
  return v;
}

MF twist(const MF& g, const Character& chi, double t) {
  auto rule = [g, chi, t](std::int64_t p, int k) -> cplx {
    const cplx c = chi(p);
    if (c == cplx{}) return {};
    const double a = k * t * std::log(static_cast<double>(p));
    return g.rule()(p, k) * ipow(c, k) * std::polar(1.0, a);
  };
  return MF(g.mode(), rule, g.unit_disc(),
            g.name() + "*chi[" + std::to_string(chi.group().modulus()) + "#" +
                std::to_string(chi.index()) + "]");
}

MF braid_mobius(const MF& g) {
  auto rule = [g](std::int64_t p, int k) -> cplx {
    return k == 1 ? -g.at_prime_power(p, 1) : cplx{};
  };
  return MF(Mode::general, rule, g.unit_disc(), g.name() + "*mu");
}

namespace {

void verify_pair(ConvolutionPair& pair, const PrimeTable& table) {
  const std::int64_t n_max = std::min<std::int64_t>(kSplitVerifyBound, table.bound());
  const auto l = batch_evaluate(pair.left, n_max, table);
  const auto r = batch_evaluate(pair.right, n_max, table);
  const auto g = batch_evaluate(pair.target, n_max, table);
  const auto c = dirichlet_convolve(l, r);
  double worst = 0.0;
  for (std::int64_t n = 1; n <= n_max; ++n) {
    const auto i = static_cast<std::size_t>(n);
    worst = std::max(worst, std::abs(c[i] - g[i]) / std::max(1.0, std::abs(g[i])));
  }
  pair.verified_up_to = n_max;
  pair.max_error = worst;
  if (worst > 1e-12)
    throw ContractError("convolution split of " + pair.target.name() +
                        " does not reproduce the target (error " + std::to_string(worst) + ")");
}

}  // namespace

ConvolutionPair split_head_tail(const MF& g, double cutoff, const PrimeTable& table) {
  if (!(cutoff >= 2.0)) throw DomainError("split_head_tail requires cutoff >= 2");
  const auto head = [g, cutoff](std::int64_t p, int k) -> cplx {
    return static_cast<double>(p) > cutoff ? g.at_prime_power(p, k) : cplx{};
  };
  const auto tail = [g, cutoff](std::int64_t p, int k) -> cplx {
    return static_cast<double>(p) <= cutoff ? g.at_prime_power(p, k) : cplx{};
  };
  ConvolutionPair pair{MF(Mode::general, head, g.unit_disc(), g.name() + "[p>cut]"),
                       MF(Mode::general, tail, g.unit_disc(), g.name() + "[p<=cut]"), g};
  verify_pair(pair, table);
  return pair;
}

ConvolutionPair split_completely_multiplicative(const MF& g, const PrimeTable& table) {
  const auto base = [g](std::int64_t p, int) -> cplx { return g.at_prime_power(p, 1); };
  const auto rest = [g](std::int64_t p, int k) -> cplx {
    return g.at_prime_power(p, k) - g.at_prime_power(p, 1) * g.at_prime_power(p, k - 1);
  };
  ConvolutionPair pair{MF(Mode::completely, base, g.unit_disc(), g.name() + ":l"),
                       MF(Mode::general, rest, false, g.name() + ":r"), g};
  verify_pair(pair, table);
  return pair;
}

ConvolutionPair split_exponential(const MF& g, const PrimeTable& table) {
  const std::int64_t n_max = std::min<std::int64_t>(kSplitVerifyBound, table.bound());
  for (const auto p : table.primes()) {
    if (p > n_max) break;
    const cplx v = g.at_prime_power(p, 1);
    if (v.imag() != 0.0 || v.real() < 0.0 || v.real() > 1.0)
      throw DomainError("split_exponential requires g(p) real in [0, 1]");
  }
  const auto base = [g](std::int64_t p, int) -> cplx { return g.at_prime_power(p, 1); };
  const auto rest = [g](std::int64_t p, int k) -> cplx {
    const cplx gp = g.at_prime_power(p, 1);
    cplx s{};
    cplx term{1.0, 0.0};  // (-g(p))^j / j!
    for (int j = 0; j <= k; ++j) {
      s += term * g.at_prime_power(p, k - j);
      term *= -gp / static_cast<double>(j + 1);
    }
    return s;
  };
  ConvolutionPair pair{MF(Mode::exponentially, base, g.unit_disc(), g.name() + ":l"),
                       MF(Mode::general, rest, false, g.name() + ":r"), g};
  verify_pair(pair, table);
  return pair;
}

std::vector<cplx> dirichlet_convolve(std::span<const cplx> a, std::span<const cplx> b) {
  const std::size_t n = std::min(a.size(), b.size());
  std::vector<cplx> c(n);
  for (std::size_t d = 1; d < n; ++d) {
    if (a[d] == cplx{}) continue;
    for (std::size_t m = 1; d * m < n; ++m) c[d * m] += a[d] * b[m];
  }
  return c;
}

MF one() {
  return MF(Mode::completely, [](std::int64_t, int) { return cplx{1.0, 0.0}; }, true, "one");
}

MF mobius() {
  return MF(Mode::general, [](std::int64_t, int k) { return k == 1 ? cplx{-1.0, 0.0} : cplx{}; },
            true, "mobius");
}

MF mobius_tail(std::int64_t D) {
  return MF(Mode::general,
            [D](std::int64_t p, int k) { return (p > D && k == 1) ? cplx{-1.0, 0.0} : cplx{}; },
            true, "mobius-tail(" + std::to_string(D) + ")");
}

MF unit_tail(std::int64_t D) {
  return MF(Mode::completely,
            [D](std::int64_t p, int) { return p > D ? cplx{1.0, 0.0} : cplx{}; }, true,
            "unit-tail(" + std::to_string(D) + ")");
}

MF random_unitdisc(std::uint64_t seed) {
  return MF(Mode::general,
            [seed](std::int64_t p, int k) {
              CounterRng rng(seed, 2 * prime_power_key(p, k));
              return rng.unit_disc();
            },
            true, "random-unitdisc(" + std::to_string(seed) + ")");
}

MF random_sign(std::uint64_t seed) {
  return MF(Mode::completely,
            [seed](std::int64_t p, int) {
              return (CounterRng::at(seed, prime_power_key(p, 1)) >> 63) ? cplx{-1.0, 0.0}
                                                                         : cplx{1.0, 0.0};
            },
            true, "random-sign(" + std::to_string(seed) + ")");
}

MF random_unit_interval(std::uint64_t seed) {
  return MF(Mode::general,
            [seed](std::int64_t p, int k) {
              CounterRng rng(seed, prime_power_key(p, k));
              return cplx{rng.uniform(), 0.0};
            },
            true, "random-unit-interval(" + std::to_string(seed) + ")");
}

MF parse_builtin(const std::string& spec) {
  static const std::regex re(R"(^\s*([a-z\-]+)\s*(?:\(\s*(\d+)\s*\))?\s*$)");
  std::smatch m;
  if (!std::regex_match(spec, m, re)) throw ConfigError("unrecognised function: " + spec);
  const std::string name = m[1];
  const bool has_arg = m[2].matched;
  const std::uint64_t arg = has_arg ? std::stoull(m[2]) : 0;
  if (name == "one" && !has_arg) return one();
  if (name == "mobius" && !has_arg) return mobius();
  if (name == "mobius-tail" && has_arg) return mobius_tail(static_cast<std::int64_t>(arg));
  if (name == "unit-tail" && has_arg) return unit_tail(static_cast<std::int64_t>(arg));
  if (name == "random-unitdisc" && has_arg) return random_unitdisc(arg);
  if (name == "random-sign" && has_arg) return random_sign(arg);
  if (name == "random-unit-interval" && has_arg) return random_unit_interval(arg);
  throw ConfigError("unrecognised function: " + spec);
}

}  // namespace nt

#include "nt/meanvalue.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include <boost/math/special_functions/expint.hpp>

#include "nt/error.hpp"
#include "nt/kernels.hpp"

namespace nt {

namespace {

void require_range(Values f, std::int64_t x) {
  if (x < 0 || x >= static_cast<std::int64_t>(f.size()))
    throw DomainError("value array shorter than requested range");
}

double log_D_safe(std::int64_t D) { return std::log(static_cast<double>(std::max<std::int64_t>(D, 2))); }

}  // namespace

cplx partial_sum_M(Values f, std::int64_t x) {
  require_range(f, x);
  cplx s{};
  for (std::int64_t n = 1; n <= x; ++n) s += f[static_cast<std::size_t>(n)];
  return s;
}

cplx partial_sum_N(Values f, std::int64_t x) {
  require_range(f, x);
  cplx s{};
  for (std::int64_t n = 2; n <= x; ++n)
    s += f[static_cast<std::size_t>(n)] * std::log(static_cast<double>(n));
  return s;
}

cplx character_sum(Values f, const Character& chi, std::int64_t x) {
  require_range(f, x);
  cplx s{};
  for (std::int64_t n = 1; n <= x; ++n) {
    const auto k = chi.angle(n);
    if (k >= 0) s += f[static_cast<std::size_t>(n)] * chi.group().root(k);
  }
  return s;
}

ProgressionSums progression_sums(Values f, std::int64_t D, std::int64_t x) {
  require_range(f, x);
  if (D < 1) throw DomainError("modulus must be positive");
  ProgressionSums ps;
  ps.D = D;
  ps.x = x;
  ps.by_class = kernels::class_sums(f, D, x);
  for (std::int64_t a = 0; a < D; ++a) {
    if (std::gcd(a, D) == 1 || D == 1)
      ps.coprime_total += ps.by_class[static_cast<std::size_t>(a)];
    else
      ps.by_class[static_cast<std::size_t>(a)] = {};
  }
  return ps;
}

cplx Y(Values f, std::int64_t a, std::int64_t x, std::int64_t D, std::span<const Character> J) {
  require_range(f, x);
  if (std::gcd(((a % D) + D) % D, D) != 1 && D != 1)
    throw DomainError("Y requires (a, D) = 1");
  cplx s{};
  for (std::int64_t n = ((a % D) + D) % D; n <= x; n += D)
    if (n >= 1) s += f[static_cast<std::size_t>(n)];
  const double phi = static_cast<double>(euler_phi(D));
  for (const auto& chi : J) {
    if (chi.group().modulus() != D) throw DomainError("character modulus differs from D");
    s -= std::conj(chi(a)) / phi * character_sum(f, chi, x);
  }
  return s;
}

IdentityCheck lemma_I5_check(Values b, const CharacterGroup& group,
                             std::span<const std::size_t> J) {
  const std::int64_t D = group.modulus();
  const double phi = static_cast<double>(group.phi());
  const auto chars = group.characters();
  const std::int64_t x = static_cast<std::int64_t>(b.size()) - 1;
  std::vector<cplx> B(chars.size());
  for (std::size_t j = 0; j < chars.size(); ++j) B[j] = x >= 1 ? character_sum(b, chars[j], x) : cplx{};
  std::vector<bool> in_J(chars.size(), false);
  for (const auto j : J) in_J.at(j) = true;

  IdentityCheck out;
  // Left side from residue-class sums minus the J-expansion.
  std::vector<cplx> cls(static_cast<std::size_t>(D));
  for (std::int64_t n = 1; n <= x; ++n) cls[static_cast<std::size_t>(n % D)] += b[static_cast<std::size_t>(n)];
  for (const auto a : group.reduced_residues()) {
    cplx L = cls[static_cast<std::size_t>(a)];
    for (std::size_t j = 0; j < chars.size(); ++j)
      if (in_J[j]) L -= std::conj(chars[j](a)) / phi * B[j];
    out.lhs += std::norm(L);
  }
  out.lhs *= phi;
  for (std::size_t j = 0; j < chars.size(); ++j)
    if (!in_J[j]) out.rhs += std::norm(B[j]);
  return out;
}

double theorem1_envelope(Values g, std::int64_t y, std::int64_t D, double alpha,
                         const PrimeTable& table) {
  const double ly = std::log(static_cast<double>(y));
  double prod = 1.0;
  for (const auto p : table.primes()) {
    if (p > D) break;
    if (D % p == 0) continue;
    prod *= 1.0 + std::abs(g[p]) / p;
  }
  return static_cast<double>(y) / (static_cast<double>(euler_phi(D)) * ly) * prod *
         std::pow(ly / log_D_safe(D), alpha);
}

DecompositionReport theorem1_decompose(Values g, std::int64_t a, std::int64_t y,
                                       const CharacterGroup& group, std::span<const Character> J,
                                       double alpha, const PrimeTable& table) {
  const std::int64_t D = group.modulus();
  if (!(alpha > 0.0 && alpha < 1.0)) throw DomainError("alpha must lie in (0, 1)");
  if (D < 1 || D > y) throw DomainError("theorem1_decompose requires 1 <= D <= y");
  if (!group.is_reduced(a)) throw DomainError("theorem1_decompose requires (a, D) = 1");
  require_range(g, y);
  DecompositionReport r;
  r.y = y;
  r.D = D;
  r.a = ((a % D) + D) % D;
  r.alpha = alpha;
  const auto ps = progression_sums(g, D, y);
  const double phi = static_cast<double>(group.phi());
  r.progression_sum = ps.at(a);
  r.principal_term = ps.coprime_total / phi;
  r.residual = r.progression_sum - r.principal_term;
  for (const auto& chi : J) {
    if (chi.is_principal()) throw DomainError("principal character belongs to the main term, not J");
    const cplx v = std::conj(chi(a)) / phi * character_sum(g, chi, y);
    r.exceptional.push_back({chi, v});
    r.residual -= v;
  }
  r.envelope = theorem1_envelope(g, y, D, alpha, table);
  const double ly = std::log(static_cast<double>(y));
  r.simplified_envelope = static_cast<double>(y) / static_cast<double>(D) *
                          std::pow(log_D_safe(D) / ly, 1.0 - alpha);
  return r;
}

RatioCheck shiu_bound_check(const MF& h, std::int64_t a, std::int64_t D, std::int64_t x,
                            const PrimeTable& table) {
  if (x < 2) throw DomainError("shiu_bound_check requires x >= 2");
  if (std::gcd(((a % D) + D) % D, D) != 1 && D != 1) throw DomainError("requires (a, D) = 1");
  const auto v = batch_evaluate(h, x, table);
  RatioCheck r;
  for (std::int64_t n = 1; n <= x; ++n) {
    const cplx z = v[static_cast<std::size_t>(n)];
    if (z.real() < 0.0 || z.imag() != 0.0) throw DomainError("shiu_bound_check: h must be nonnegative");
    if ((n - a) % D == 0) r.lhs += z.real();
  }
  double s = 0.0;
  for (const auto p : table.primes()) {
    if (p > x) break;
    if (D % p != 0) s += v[p].real() / p;
  }
  r.rhs_shape = static_cast<double>(x) / (static_cast<double>(euler_phi(D)) * std::log(double(x))) * std::exp(s);
  r.ratio = r.lhs / r.rhs_shape;
  return r;
}

namespace {

RatioCheck tail_sum(const MF& g, std::int64_t w, std::int64_t x, double Ylim, std::int64_t a,
                    std::int64_t D, const PrimeTable& table, std::vector<cplx>& v) {
  if (w < 2 || x < w) throw DomainError("requires 2 <= w <= x");
  if (std::gcd(((a % D) + D) % D, D) != 1 && D != 1) throw DomainError("requires (a, D) = 1");
  v = batch_evaluate(g, x, table);
  for (const auto p : table.primes()) {
    if (p > x) break;
    const cplx z = v[p];
    if (z.imag() != 0.0 || z.real() < 0.0 || z.real() > 1.0)
      throw DomainError("g must be real in [0, 1] on the primes");
    if (static_cast<double>(p) > Ylim && z.real() != 0.0)
      throw DomainError("g must vanish on primes above Y");
  }
  RatioCheck r;
  const std::int64_t a0 = ((a % D) + D) % D;
  for (std::int64_t n = w + 1; n <= x; ++n)
    if (n % D == a0) r.lhs += v[static_cast<std::size_t>(n)].real();
  return r;
}

}  // namespace

RatioCheck exponential_tail_check(const MF& g, std::int64_t w, std::int64_t x, double Ylim,
                                  std::int64_t a, std::int64_t D, const PrimeTable& table) {
  if (g.mode() != Mode::exponentially) throw DomainError("requires an exponentially multiplicative g");
  std::vector<cplx> v;
  auto r = tail_sum(g, w, x, Ylim, a, D, table, v);
  double s = 0.0;
  for (const auto p : table.primes()) {
    if (static_cast<double>(p) > Ylim || p > x) break;
    if (D % p != 0) s += v[p].real() / p;
  }
  r.rhs_shape = static_cast<double>(x) / (static_cast<double>(euler_phi(D)) * std::log(double(x))) *
                std::exp(s) * (Ylim >= 2.0 ? std::exp(-std::log(double(w)) / std::log(Ylim)) : 0.0);
  r.ratio = r.rhs_shape > 0.0 ? r.lhs / r.rhs_shape : 0.0;
  return r;
}

RatioCheck truncated_decay_check(const MF& g, std::int64_t w, std::int64_t x, double Ylim,
                                 std::int64_t a, std::int64_t D, const PrimeTable& table) {
  double d11 = 1.0;
  for (int i = 0; i < 11; ++i) d11 *= static_cast<double>(D);
  if (static_cast<double>(w) < d11) throw DomainError("truncated_decay_check requires D^11 <= w");
  std::vector<cplx> v;
  auto r = tail_sum(g, w, x, Ylim, a, D, table, v);
  double prod = 1.0;
  for (const auto p : table.primes()) {
    if (static_cast<double>(p) > Ylim || p > x) break;
    if (D % p != 0) prod *= 1.0 + v[p].real() / p;
  }
  const double lw = std::log(static_cast<double>(w));
  const double decay = Ylim >= 2.0 ? std::exp(-lw / (10.0 * std::log(Ylim))) : 0.0;
  r.rhs_shape = static_cast<double>(x) / (static_cast<double>(euler_phi(D)) * lw) * prod * decay;
  r.ratio = r.rhs_shape > 0.0 ? r.lhs / r.rhs_shape : 0.0;
  return r;
}

LogarithmicReport logarithmic_mean_check(const MF& g, std::int64_t w, double r,
                                         const PrimeTable& table) {
  if (g.mode() == Mode::general)
    throw DomainError("logarithmic_mean_check requires a completely or exponentially multiplicative g");
  if (w < 3 || !(r > 0.0)) throw DomainError("requires w >= 3, r > 0");
  const auto v = batch_evaluate(g, w, table);
  const double lw = std::log(static_cast<double>(w));
  LogarithmicReport out;
  out.w = static_cast<double>(w);
  out.r = r;
  out.y = out.w - out.w * std::pow(lw, -r);
  // Step functions M(n), N(n) on [n, n+1).
  std::vector<cplx> M(static_cast<std::size_t>(w) + 1), N(static_cast<std::size_t>(w) + 1);
  for (std::int64_t n = 1; n <= w; ++n) {
    const auto i = static_cast<std::size_t>(n);
    M[i] = M[i - 1] + v[i];
    N[i] = N[i - 1] + v[i] * std::log(static_cast<double>(n));
  }
  out.lhs = std::abs(N[static_cast<std::size_t>(w)]);
  // int_a^b du / (u^2 log u) = E1(log a) - E1(log b).
  double integral = 0.0;
  for (std::int64_t n = 2; n < w; ++n) {
    const double e = boost::math::expint(1, std::log(double(n))) - boost::math::expint(1, std::log(double(n + 1)));
    integral += std::abs(N[static_cast<std::size_t>(n)]) * e;
  }
  out.integral_term = out.w * integral;
  // Exact integral of |M(u)| over [lo, hi].
  const auto int_abs_M = [&](double lo, double hi) {
    double s = 0.0;
    for (auto n = static_cast<std::int64_t>(std::floor(lo)); static_cast<double>(n) < hi && n <= w; ++n) {
      const double a0 = std::max(lo, static_cast<double>(n));
      const double b0 = std::min(hi, static_cast<double>(n + 1));
      if (b0 > a0 && n >= 1) s += std::abs(M[static_cast<std::size_t>(n)]) * (b0 - a0);
    }
    return s;
  };
  const double dmax = std::pow(lw, 2.0 * r);
  for (std::int64_t d = 2; static_cast<double>(d) <= dmax && d <= w; ++d) {
    const auto f = table.factorize(d);
    if (f.size() != 1) continue;
    const double lam = std::log(static_cast<double>(f[0].p));
    const double gd = std::abs(v[static_cast<std::size_t>(d)]);
    if (gd == 0.0) continue;
    out.short_term += static_cast<double>(d) * lam * gd / (out.w - out.y) *
                      int_abs_M(out.y / static_cast<double>(d), out.w / static_cast<double>(d));
  }
  cplx run{};
  for (auto n = static_cast<std::int64_t>(std::floor(out.y)) + 1; n <= w; ++n) {
    run += v[static_cast<std::size_t>(n)] * std::log(static_cast<double>(n));
    out.e0 = std::max(out.e0, std::abs(run));
  }
  const double rhs = out.integral_term + out.short_term + out.e0;
  out.ratio = rhs > 0.0 ? out.lhs / rhs : 0.0;
  return out;
}

L2Report l2_mean_square(Values g, const CharacterGroup& group, std::span<const std::size_t> J,
                        std::int64_t t, double x, double delta) {
  require_range(g, t);
  const std::int64_t D = group.modulus();
  L2Report out;
  out.D = D;
  out.t = t;
  out.x = x;
  out.delta = delta;
  const auto chars = group.characters();
  std::vector<bool> in_J(chars.size(), false);
  for (const auto j : J) in_J.at(j) = true;
  std::vector<cplx> run(chars.size());
  std::vector<double> best(chars.size(), 0.0);
  for (std::int64_t n = 1; n <= t; ++n) {
    const cplx gn = g[static_cast<std::size_t>(n)];
    if (gn == cplx{}) {
      if (n >= 2)
        for (std::size_t j = 0; j < chars.size(); ++j) best[j] = std::max(best[j], std::norm(run[j]));
      continue;
    }
    for (std::size_t j = 0; j < chars.size(); ++j) {
      run[j] += gn * chars[j](n);
      if (n >= 2) best[j] = std::max(best[j], std::norm(run[j]));
    }
  }
  for (std::size_t j = 0; j < chars.size(); ++j)
    if (!in_J[j]) out.lhs += best[j];
  const double lt = std::log(static_cast<double>(t));
  out.rhs = std::pow(static_cast<double>(t) / lt, 2.0) *
            std::pow(std::log(x) / std::log(static_cast<double>(D)), delta);
  out.ratio = out.lhs / out.rhs;
  std::vector<Character> Jc;
  for (const auto j : J) Jc.push_back(chars[j]);
  for (const auto a : group.reduced_residues()) out.residue_form += std::norm(Y(g, a, t, D, Jc));
  out.residue_form *= static_cast<double>(group.phi());
  return out;
}

}  // namespace nt

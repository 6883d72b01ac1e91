#include "nt/pretense.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "nt/error.hpp"
#include "nt/kernels.hpp"

namespace nt {

DistanceContext::DistanceContext(std::int64_t D, std::int64_t x, const PrimeTable& table, Metric metric,
                                 double sigma)
    : D_(D), x_(x), table_(&table), metric_(metric), sigma_(sigma) {
  if (x > table.bound()) throw DomainError("distance context beyond the prime table");
  if (metric == Metric::intro && !(sigma > 1.0)) throw DomainError("intro metric needs sigma > 1");
  if (D < x) L_ = D < 2 ? 0.5 + prime_reciprocal_sum(table, 2, x) : prime_reciprocal_sum(table, D, x);
  if (metric == Metric::window && !(L_ > 0.0)) throw DomainError("window metric needs a prime in (D, x]");
}

std::span<const std::uint32_t> DistanceContext::primes() const {
  const auto lo = metric_ == Metric::window ? D_ : 1;
  const auto [a, b] = table_->prime_range(lo, x_);
  return table_->primes().subspan(a, b - a);
}

double rho(const PrimeValues& g, const PrimeValues& h, const DistanceContext& ctx) {
  double s = 0.0;
  for (const auto p : ctx.primes()) {
    const double d = std::norm(g(p) - h(p));
    s += ctx.metric() == Metric::window ? d / p : d * std::pow(double(p), -ctx.sigma());
  }
  if (ctx.metric() == Metric::window) s /= 4.0 * ctx.L();
  return std::sqrt(s);
}

double rho(const MF& g, const MF& h, const DistanceContext& ctx) {
  return rho([&](std::int64_t p) { return g.at_prime(p); },
             [&](std::int64_t p) { return h.at_prime(p); }, ctx);
}

double delta_T(std::int64_t D, double T, double c) {
  if (D < 2) throw DomainError("Delta(T) needs D >= 2");
  if (T < static_cast<double>(D)) throw DomainError("Delta(T) needs T >= D");
  return std::log(std::log(T) / std::log(static_cast<double>(D))) + c;
}

namespace {

kernels::LambdaPrimes lambda_primes(const PrimeValues& g, double Y, std::int64_t x,
                                    const PrimeTable& table) {
  kernels::LambdaPrimes lp;
  const auto lo = static_cast<std::int64_t>(std::floor(std::max(Y, 1.0)));
  const auto [a, b] = table.prime_range(lo, x);
  const auto primes = table.primes();
  for (std::size_t i = a; i < b; ++i) {
    const std::int64_t p = primes[i];
    if (static_cast<double>(p) <= Y) continue;
    const cplx v = g(p);
    lp.abs_g.push_back(std::abs(v));
    lp.re_g.push_back(v.real());
    lp.im_g.push_back(v.imag());
    lp.logp.push_back(std::log(static_cast<double>(p)));
    lp.inv_p.push_back(1.0 / static_cast<double>(p));
  }
  return lp;
}

// Smallest value, then smallest t.
void take_min(LambdaResult& r, std::span<const double> ts, std::span<const double> vs) {
  for (std::size_t i = 0; i < ts.size(); ++i)
    if (vs[i] < r.lambda || (vs[i] == r.lambda && ts[i] < r.t_star)) {
      r.lambda = vs[i];
      r.t_star = ts[i];
    }
}

LambdaResult lambda_from_primes(const kernels::LambdaPrimes& lp, std::int64_t x, double T,
                                double spacing, std::span<const double> seeds) {
  if (!(T >= 0.0)) throw DomainError("lambda_min needs T >= 0");
  if (!(spacing > 0.0) || spacing > 1.0 / std::log(static_cast<double>(x)) * (1.0 + 1e-12))
    throw DomainError("lambda_min needs 0 < spacing <= 1/log x");
  LambdaResult r;
  r.T = T;
  r.spacing = spacing;
  r.refined_spacing = spacing / 100.0;
  r.lambda = std::numeric_limits<double>::infinity();
  const auto K = static_cast<std::int64_t>(std::floor(T / spacing * (1.0 + 1e-12)));
  std::vector<double> ts;
  for (std::int64_t k = -K; k <= K; ++k) ts.push_back(static_cast<double>(k) * spacing);
  auto vs = kernels::lambda_values(lp, ts);
  take_min(r, ts, vs);
  r.evaluations += ts.size();

  const double centre = r.t_star;
  ts.clear();
  for (int k = -100; k <= 100; ++k) {
    const double t = centre + k * r.refined_spacing;
    if (std::abs(t) <= T && k != 0) ts.push_back(t);
  }
  for (const double s : seeds)
    if (std::abs(s) <= T) ts.push_back(s);
  vs = kernels::lambda_values(lp, ts);
  take_min(r, ts, vs);
  r.evaluations += ts.size();
  return r;
}

}  // namespace

LambdaResult lambda_min(const PrimeValues& g, double Y, std::int64_t x, double T, double spacing,
                        const PrimeTable& table, std::span<const double> seeds) {
  if (!(Y <= static_cast<double>(x))) throw DomainError("lambda_min needs Y <= x");
  return lambda_from_primes(lambda_primes(g, Y, x, table), x, T, spacing, seeds);
}

std::vector<LambdaResult> lambda_ladder(const PrimeValues& g, double Y, std::int64_t x,
                                        std::span<const double> Ts, const PrimeTable& table) {
  const auto lp = lambda_primes(g, Y, x, table);
  const double spacing = 1.0 / std::log(static_cast<double>(x));
  std::vector<LambdaResult> out;
  std::vector<double> seeds;
  for (const double T : Ts) {
    if (!out.empty() && T < out.back().T) throw DomainError("lambda ladder needs ascending T");
    out.push_back(lambda_from_primes(lp, x, T, spacing, seeds));
    seeds.push_back(out.back().t_star);
  }
  return out;
}

double lower_bound_scan(const PrimeValues& g, double lo, std::int64_t x, double c,
                        const PrimeTable& table, int k) {
  const auto primes = table.primes();
  const auto [a, b] = table.prime_range(static_cast<std::int64_t>(std::floor(std::max(lo, 1.0))), x);
  // Suffix sums over the primes, then evaluate at the grid points.
  std::vector<double> suffix(b - a + 1, 0.0);
  for (std::size_t i = b; i-- > a;) {
    const cplx v = g(primes[i]);
    double term = (std::abs(v) - c) / primes[i];
    if (k > 0) {
      const cplx vk = std::pow(v, k);
      if (std::abs(vk.imag()) > 1e-12 * std::max(1.0, std::abs(vk))) term = 0.0;
    }
    suffix[i - a] = suffix[i - a + 1] + term;
  }
  double best = std::numeric_limits<double>::infinity();
  constexpr int m = 64;
  const double ratio = static_cast<double>(x) / std::max(lo, 1.0);
  for (int j = 0; j <= m; ++j) {
    const double w = std::max(lo, 1.0) * std::pow(ratio, double(j) / m);
    // first prime > w
    const auto it = std::upper_bound(primes.begin() + static_cast<std::ptrdiff_t>(a),
                                     primes.begin() + static_cast<std::ptrdiff_t>(b), w,
                                     [](double v, std::uint32_t p) { return v < static_cast<double>(p); });
    best = std::min(best, suffix[static_cast<std::size_t>(it - primes.begin()) - a]);
  }
  return best;
}

HalaszResult halasz_bound(const MF& g, double Y, std::int64_t x, double T, double beta, double c,
                          double c1, const PrimeTable& table) {
  if (!(Y >= 1.5) || Y > static_cast<double>(x)) throw DomainError("halasz_bound needs 3/2 <= Y <= x");
  if (!(T > 0.0) || !(beta > 0.0) || !(c > 0.0)) throw DomainError("halasz_bound needs T, beta, c > 0");
  HalaszResult r;
  const PrimeValues gp = [&](std::int64_t p) { return g.at_prime(p); };
  r.lambda = lambda_min(gp, Y, x, T, 1.0 / std::log(static_cast<double>(x)), table);
  double prod_log = 0.0;
  for (const auto p : table.primes()) {
    if (p > x) break;
    const double a = std::abs(g.at_prime(p));
    r.max_abs_g = std::max(r.max_abs_g, a);
    prod_log += std::log1p(a / p);
  }
  const double lx = std::log(static_cast<double>(x));
  r.main_factor = static_cast<double>(x) / lx * std::exp(prod_log);
  r.exp_term = r.main_factor * std::exp(-r.lambda.lambda * c / (c + beta));
  r.T_term = r.main_factor / std::sqrt(T);
  r.bound = r.exp_term + r.T_term;
  r.beta_ok = r.max_abs_g <= beta * (1.0 + 1e-12);
  r.min_tail_sum = lower_bound_scan(gp, Y, x, c, table);
  r.lower_bound_ok = r.min_tail_sum >= -c1;
  r.gamma = 1.0 + c * beta / (c + beta);
  for (const auto p : table.primes()) {
    if (static_cast<std::int64_t>(p) * p > x) break;
    std::int64_t q = static_cast<std::int64_t>(p) * p;
    for (int k = 2; q <= x; ++k, q *= p) {
      const double lq = std::log(static_cast<double>(q));
      r.higher_power_series += std::abs(g.at_prime_power(p, k)) * std::pow(lq, r.gamma) / static_cast<double>(q);
      if (q > x / p) break;
    }
  }
  r.applicable = r.beta_ok && r.lower_bound_ok;
  return r;
}

SpacingResult spacing_lower_bound(const Character& chi1, double t1, const Character& chi2, double t2,
                                  const DistanceContext& ctx, double T, double c) {
  if (chi1 == chi2) throw DomainError("spacing bound needs distinct characters");
  if (std::abs(t1) > T || std::abs(t2) > T) throw DomainError("spacing bound needs |t_i| <= T");
  if (ctx.metric() != Metric::window) throw DomainError("spacing bound uses the window metric");
  SpacingResult r;
  const auto gen = [](const Character& chi, double t) {
    return [&chi, t](std::int64_t p) { return chi(p) * std::polar(1.0, t * std::log(static_cast<double>(p))); };
  };
  r.distance = rho(gen(chi1, t1), gen(chi2, t2), ctx);
  const double v = 0.5 - delta_T(ctx.D(), 2.0 * T, c) / (2.0 * ctx.L());
  r.bound_positive = v > 0.0;
  r.bound = r.bound_positive ? std::sqrt(v) : 0.0;
  return r;
}

double fejer_kernel_sum(int N, double theta) {
  if (N < 1) throw DomainError("Fejer kernel needs N >= 1");
  double s = 1.0;
  for (int m = 1; m < N; ++m)
    s += 2.0 * (1.0 - static_cast<double>(m) / N) * std::cos(2.0 * std::numbers::pi * m * theta);
  return s;
}

double fejer_kernel(int N, double theta) {
  if (N < 1) throw DomainError("Fejer kernel needs N >= 1");
  const double frac = theta - std::round(theta);
  const double den = std::sin(std::numbers::pi * frac);
  if (std::abs(frac) < 1e-6) return fejer_kernel_sum(N, frac);
  const double num = std::sin(std::numbers::pi * N * frac);
  return num * num / (den * den) / N;
}

const char* to_string(OrderVerdict v) {
  return v == OrderVerdict::order_bound ? "order-bound" : "sum-bound";
}

namespace {

struct PrimeSums {
  double L = 0.0, lhs = 0.0, hyp = 0.0;
};

PrimeSums order_sums(const PrimeWeight& h, const Character& chi, double t, std::int64_t lo,
                     std::int64_t x, const PrimeTable& table) {
  PrimeSums s;
  const auto [a, b] = table.prime_range(lo, x);
  const auto primes = table.primes();
  for (std::size_t i = a; i < b; ++i) {
    const std::int64_t p = primes[i];
    const double inv = 1.0 / static_cast<double>(p);
    s.L += inv;
    const double hp = h(p);
    if (hp < 0.0 || hp > 1.0) throw HypothesisError("h(p) must lie in [0, 1]");
    if (hp == 0.0) continue;
    s.lhs += hp * inv;
    const cplx z = chi(p) * std::polar(1.0, t * std::log(static_cast<double>(p)));
    s.hyp += hp * inv * std::norm(1.0 - z);
  }
  return s;
}

}  // namespace

OrderTestResult order_test_A1(const PrimeWeight& h, const Character& chi, double t, double delta,
                              std::int64_t x, double T, double c, const PrimeTable& table) {
  const std::int64_t D = chi.group().modulus();
  if (D < 2 || x < D) throw DomainError("order test needs 2 <= D <= x");
  if (!(delta > 0.0 && delta <= 1.0)) throw DomainError("order test needs 0 < delta <= 1");
  if (std::abs(t) > T) throw DomainError("order test needs |t| <= T");
  if (T < static_cast<double>(D)) throw DomainError("order test needs T >= D");
  const auto s = order_sums(h, chi, t, D, x, table);
  OrderTestResult r;
  r.delta = delta;
  r.L = s.L;
  r.hypothesis_sum = s.hyp;
  r.lhs = s.lhs;
  if (s.hyp > delta * s.L) throw HypothesisError("order test hypothesis sum exceeds delta L");
  const double d13 = std::cbrt(delta);
  r.N = static_cast<int>(std::floor(2.0 / d13));
  r.threshold = 4.0 * d13 * s.L + delta_T(D, T / d13, c);
  r.order = chi.order();
  r.order_limit = 2.0 / d13;
  r.verdict = r.lhs > r.threshold ? OrderVerdict::order_bound : OrderVerdict::sum_bound;
  r.consistent = r.verdict == OrderVerdict::sum_bound || static_cast<double>(r.order) < r.order_limit;
  return r;
}

OrderTestA2Result order_test_A2(const PrimeWeight& h, const Character& chi, double t, double delta,
                                int r, std::int64_t x, double T, double c, const PrimeTable& table) {
  const std::int64_t D = chi.group().modulus();
  if (D < 2 || x < D) throw DomainError("order test needs 2 <= D <= x");
  if (r < 2 || !(delta > 0.0) || r * r * r * delta > 1.0) throw DomainError("order test needs r >= 2, r^3 delta <= 1");
  if (T < static_cast<double>(D)) throw DomainError("order test needs T >= D");
  const auto s = order_sums(h, chi, t, D, x, table);
  if (s.hyp > delta * s.L) throw HypothesisError("order test hypothesis sum exceeds delta L");
  OrderTestA2Result out;
  out.r = r;
  out.delta = delta;
  out.L = s.L;
  out.hypothesis_sum = s.hyp;
  out.lhs = s.lhs;
  out.bound = (1.0 + std::sqrt(r * r * r * delta)) * s.L / r +
              delta_T(D, (r - 1) * T, c);
  out.order = chi.order();
  out.applies = out.order >= r;
  out.holds = out.lhs <= out.bound;
  return out;
}

PsiValue psi_bound(double y, double x, double t, double c0) {
  if (!(y >= 2.0) || x < y) throw DomainError("psi bound needs x >= y >= 2");
  const double ly = std::log(y), lx = std::log(x), at = std::abs(t);
  struct Cand {
    int branch;
    bool on;
    double v;
  };
  const Cand cands[3] = {
      {1, at >= 1.0 / ly, 2.0 * std::log(std::log(2.0 + at)) + c0},
      {2, at >= 1.0 / lx && at <= 1.0 / ly, -std::log(at * ly) + c0},
      {3, at <= 1.0 / lx, std::log(lx / ly) + c0},
  };
  // Strict branch membership; closed intervals only matter on boundaries.
  const int strict = at > 1.0 / ly ? 1 : (at > 1.0 / lx ? 2 : 3);
  PsiValue out;
  out.branch = strict;
  out.value = cands[strict - 1].v;
  for (const auto& c : cands) {
    if (!c.on || c.branch == strict) continue;
    out.boundary_tie = true;
    if (c.v < out.value) {
      out.value = c.v;
      out.branch = c.branch;
    }
  }
  return out;
}

ATestResult t_test_A4(const PrimeWeight& h, double t, double delta, std::int64_t y, std::int64_t x,
                      double c0, const PrimeTable& table) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("A4 test needs 0 < delta < 1");
  if (y < 2 || x < y) throw DomainError("A4 test needs x >= y >= 2");
  ATestResult r;
  r.delta = delta;
  const auto [a, b] = table.prime_range(y, x);
  const auto primes = table.primes();
  for (std::size_t i = a; i < b; ++i) {
    const std::int64_t p = primes[i];
    const double inv = 1.0 / static_cast<double>(p);
    r.L1 += inv;
    const double hp = h(p);
    if (hp < 0.0 || hp > 1.0) throw HypothesisError("h(p) must lie in [0, 1]");
    r.lhs += hp * inv;
    r.hypothesis_sum += hp * inv * std::norm(1.0 - std::polar(1.0, t * std::log(static_cast<double>(p))));
  }
  if (r.hypothesis_sum > delta * r.L1) throw HypothesisError("A4 hypothesis sum exceeds delta L1");
  const double d13 = std::cbrt(delta);
  r.psi_scaled = psi_bound(double(y), double(x), 2.0 * t / d13, c0);
  r.psi_t = psi_bound(double(y), double(x), t, c0);
  r.rhs = 4.0 * d13 * r.L1 + 3.0 * r.psi_scaled.value + 3.0 * r.psi_t.value;
  r.holds = r.lhs <= r.rhs;
  return r;
}

TaxonomyReport taxonomy_pipeline(const MF& g, std::int64_t D, std::int64_t x, double c, double c1,
                                 int k, double alpha, const PrimeTable& table) {
  if (!(c > 0.0 && c < 1.0 + 1e-12)) throw DomainError("taxonomy needs 0 < c <= 1");
  if (k < 1) throw DomainError("taxonomy needs k >= 1");
  TaxonomyReport rep;
  rep.D = D;
  rep.x = x;
  rep.c = c;
  rep.c1 = c1;
  rep.k = k;
  rep.alpha = alpha;
  rep.delta = std::pow(c / 5.0, 3.0);
  const double lD = std::log(static_cast<double>(D)), lx = std::log(static_cast<double>(x));
  rep.T_A = std::max(static_cast<double>(D), std::pow(lx / lD, 4.0));
  rep.Z = std::exp(lD * std::pow(lx / lD, 1.0 / 30.0));
  rep.L = prime_reciprocal_sum(table, D, x);
  const PrimeValues gp = [&](std::int64_t p) { return g.at_prime(p); };
  rep.min_tail_sum = lower_bound_scan(gp, double(D), x, c, table);
  rep.min_tail_sum_k = lower_bound_scan(gp, double(D), x, c, table, k);
  rep.applicable = rep.min_tail_sum >= -c1;
  rep.applicable_k = rep.min_tail_sum_k >= -c1;
  rep.pair_order_limit = 10.0 / c;
  rep.order_limit_k = 20.0 * k / c;

  const auto grid = SemiStripGrid::make(D, x, classifier_T_max(D, double(x), alpha));
  rep.classifier = classify_exceptional(g, D, x, alpha, grid, table);

  const auto values = batch_evaluate(g, x, table);
  double prod_log = 0.0;
  for (const auto p : table.primes()) {
    if (p > x) break;
    if (D % p != 0) prod_log += std::log1p(std::abs(values[p]) / p);
  }
  const double main = static_cast<double>(x) / lx * std::exp(prod_log);
  std::vector<Character> kept;
  for (const auto& cc : rep.classifier.characters) {
    if (!cc.exceptional) continue;
    TaxonomyEntry e{cc.chi, cc.max_logG, {}, false, 0.0, 0.0, 0.0};
    const Character chi = cc.chi;
    const PrimeValues twisted = [&](std::int64_t p) { return g.at_prime(p) * chi(p); };
    e.lambda = lambda_min(twisted, double(D), x, rep.T_A / 2.0, 1.0 / lx, table);
    e.removable = e.lambda.lambda > rep.delta * rep.L / 8.0;
    const auto zmax = std::min<std::int64_t>(x, static_cast<std::int64_t>(std::floor(rep.Z)));
    const auto [a, b] = table.prime_range(D, zmax);
    for (std::size_t i = a; i < b; ++i) {
      const std::int64_t p = table.primes()[i];
      const cplx v = g.at_prime(p);
      e.Z_sum += (std::abs(v) - (v * chi(p)).real()) / static_cast<double>(p);
    }
    cplx s{};
    for (std::int64_t n = 1; n <= x; ++n) s += values[static_cast<std::size_t>(n)] * chi(n);
    e.exceptional_sum = std::abs(s);
    e.exceptional_bound = main * std::exp(-c / (c + 1.0) * e.Z_sum);
    if (!e.removable) kept.push_back(chi);
    if (static_cast<double>(chi.order()) > rep.order_limit_k) rep.orders_k_ok = false;
    rep.entries.push_back(std::move(e));
  }
  for (std::size_t i = 0; i < kept.size(); ++i)
    for (std::size_t j = i + 1; j < kept.size(); ++j) {
      const auto o = (kept[i] * kept[j].conj()).order();
      rep.pair_orders.push_back({kept[i].index(), kept[j].index(), o});
      if (static_cast<double>(o) > rep.pair_order_limit) rep.pair_orders_ok = false;
    }
  return rep;
}

}  // namespace nt

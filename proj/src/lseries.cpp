#include "nt/lseries.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "nt/error.hpp"
#include "nt/kernels.hpp"

namespace nt {

HalfPlanePoint::HalfPlanePoint(double sigma, double t) : sigma_(sigma), t_(t) {
  if (!(sigma >= kMinSigma)) throw DomainError("half-plane point needs sigma > 1");
}

namespace {

cplx prime_power_s(std::int64_t p, const HalfPlanePoint& s) {
  const double lp = std::log(static_cast<double>(p));
  return std::polar(std::exp(-s.sigma() * lp), -s.t() * lp);
}

}  // namespace

BoundedValue log_G_prime_sum(const MF& g, const Character& chi, std::int64_t lo, std::int64_t hi,
                             const HalfPlanePoint& s, const PrimeTable& table) {
  if (lo < 1 || hi > table.bound()) throw DomainError("interval outside the prime table");
  BoundedValue out;
  if (hi <= lo) return out;
  const auto [first, last] = table.prime_range(lo, hi);
  const auto primes = table.primes();
  for (std::size_t i = first; i < last; ++i) {
    const std::int64_t p = primes[i];
    const cplx c = chi(p);
    if (c == cplx{}) continue;
    out.value += g.at_prime(p) * c * prime_power_s(p, s);
  }
  for (std::size_t i = first; i < last; ++i) {
    const double p = primes[i];
    out.bound += 1.0 / (p * p);
  }
  out.bound += 1.0 / static_cast<double>(lo);
  return out;
}

BoundedValue G_truncated(const MF& g, const Character& chi, const HalfPlanePoint& s, std::int64_t x,
                         const PrimeTable& table) {
  if (x < 1 || x > table.bound()) throw DomainError("G_truncated: x outside the prime table");
  const auto v = batch_evaluate(g, x, table);
  BoundedValue out;
  for (std::int64_t n = 1; n <= x; ++n) {
    const auto k = chi.angle(n);
    if (k < 0) continue;
    const cplx gn = v[static_cast<std::size_t>(n)];
    if (gn == cplx{}) continue;
    out.value += gn * chi.group().root(k) * prime_power_s(n, s);
  }
  out.bound = std::pow(static_cast<double>(x), 1.0 - s.sigma()) / (s.sigma() - 1.0);
  return out;
}

double classifier_T_max(std::int64_t D, double x, double alpha) {
  const double lD = std::log(static_cast<double>(D));
  return std::exp(lD * std::pow(std::log(x) / lD, alpha * alpha / 9.0));
}

SemiStripGrid SemiStripGrid::make(std::int64_t D, std::int64_t x, double T, int m) {
  if (D < 2 || x <= D) throw ConfigError("grid needs 2 <= D < x");
  if (!(T >= 0.0) || m < 1) throw ConfigError("grid needs T >= 0 and m >= 1");
  SemiStripGrid g;
  g.D = D;
  g.x = x;
  g.T = T;
  const double lx = std::log(static_cast<double>(x));
  g.sigma = 1.0 + 1.0 / lx;
  const double cells = std::ceil(T * lx);
  g.half_steps = static_cast<std::int64_t>(cells);
  g.dt = cells > 0.0 ? T / cells : 0.0;
  const double ratio = static_cast<double>(x) / static_cast<double>(D);
  g.endpoints.push_back(D);
  for (int j = 1; j < m; ++j) {
    const auto e = static_cast<std::int64_t>(std::floor(static_cast<double>(D) * std::pow(ratio, double(j) / m)));
    if (e > g.endpoints.back() && e < x) g.endpoints.push_back(e);
  }
  g.endpoints.push_back(x);
  return g;
}

Diameter point_set_diameter(std::span<const cplx> pts) {
  Diameter best;
  const std::size_t n = pts.size();
  if (n < 2) return best;
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  std::sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
    const cplx pa = pts[a], pb = pts[b];
    if (pa.real() != pb.real()) return pa.real() < pb.real();
    if (pa.imag() != pb.imag()) return pa.imag() < pb.imag();
    return a < b;
  });
  const auto cross = [&](std::size_t o, std::size_t a, std::size_t b) {
    const cplx u = pts[a] - pts[o], v = pts[b] - pts[o];
    return u.real() * v.imag() - u.imag() * v.real();
  };
  // Andrew's monotone chain.
  std::vector<std::size_t> hull(2 * n);
  std::size_t k = 0;
  for (std::size_t i = 0; i < n; ++i) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], idx[i]) <= 0.0) --k;
    hull[k++] = idx[i];
  }
  for (std::size_t i = n - 1, lo = k + 1; i-- > 0;) {
    while (k >= lo && cross(hull[k - 2], hull[k - 1], idx[i]) <= 0.0) --k;
    hull[k++] = idx[i];
  }
  hull.resize(k > 1 ? k - 1 : k);
  const auto consider = [&](std::size_t a, std::size_t b) {
    const double d = std::abs(pts[a] - pts[b]);
    const std::size_t i = std::min(a, b), j = std::max(a, b);
    if (d > best.length || (d == best.length && d > 0.0 && (i < best.i || (i == best.i && j < best.j)))) {
      best = {d, i, j};
    }
  };
  const std::size_t h = hull.size();
  if (h <= 3) {
    for (std::size_t a = 0; a < h; ++a)
      for (std::size_t b = a + 1; b < h; ++b) consider(hull[a], hull[b]);
    return best;
  }
  // Rotating calipers over antipodal pairs.
  std::size_t j = 1;
  for (std::size_t i = 0; i < h; ++i) {
    const std::size_t i1 = (i + 1) % h;
    while (true) {
      const std::size_t j1 = (j + 1) % h;
      const cplx e = pts[hull[i1]] - pts[hull[i]];
      const cplx f = pts[hull[j1]] - pts[hull[j]];
      if (e.real() * f.imag() - e.imag() * f.real() > 0.0)
        j = j1;
      else
        break;
    }
    consider(hull[i], hull[j]);
    consider(hull[i1], hull[j]);
  }
  return best;
}

std::vector<ClassifiedCharacter> grid_maxima(std::span<const cplx> prime_weights,
                                             const CharacterGroup& group,
                                             std::span<const Character> chars,
                                             const SemiStripGrid& grid, const PrimeTable& table) {
  if (grid.x > table.bound()) throw ConfigError("grid x exceeds the prime table");
  const auto [first, last] = table.prime_range(grid.D, grid.x);
  if (prime_weights.size() != last - first) throw DomainError("one weight per prime in (D, x] expected");
  kernels::ClassScanSpec spec;
  spec.D = group.modulus();
  spec.primes = table.primes().subspan(first, last - first);
  spec.weights = prime_weights;
  spec.endpoints = grid.endpoints;
  spec.t0 = -static_cast<double>(grid.half_steps) * grid.dt;
  spec.dt = grid.dt;
  spec.nt = grid.t_count();

  const auto matrix = kernels::character_matrix(group, chars);
  const std::size_t nc = chars.size();
  const std::size_t rows = grid.endpoints.size();
  struct Best {
    double d;
    std::uint16_t i, j;
  };
  const auto per_t = kernels::scan_classes(spec, [&](std::size_t, double, const kernels::ClassPrefix& p) {
    std::vector<double> sr, si;
    kernels::to_characters(matrix, p, sr, si);
    std::vector<Best> out(nc);
    std::vector<cplx> pts(rows);
    for (std::size_t c = 0; c < nc; ++c) {
      for (std::size_t r = 0; r < rows; ++r) pts[r] = {sr[r * nc + c], si[r * nc + c]};
      const auto d = point_set_diameter(pts);
      out[c] = {d.length, static_cast<std::uint16_t>(d.i), static_cast<std::uint16_t>(d.j)};
    }
    return out;
  });

  std::vector<ClassifiedCharacter> res;
  res.reserve(nc);
  for (std::size_t c = 0; c < nc; ++c) {
    ClassifiedCharacter cc{chars[c], 0.0, 0.0, grid.D, grid.D, false};
    // Ascending t, strict improvement: ties keep the smallest t.
    for (std::size_t k = 0; k < per_t.size(); ++k) {
      const Best& b = per_t[k][c];
      if (b.d > cc.max_logG) {
        cc.max_logG = b.d;
        cc.t_at_max = grid.t_at(k);
        cc.lo = grid.endpoints[b.i];
        cc.hi = grid.endpoints[b.j];
      }
    }
    res.push_back(std::move(cc));
  }
  return res;
}

ExceptionalReport classify_exceptional(const MF& g, std::int64_t D, std::int64_t x, double alpha,
                                       const SemiStripGrid& grid, const PrimeTable& table,
                                       double slack) {
  if (D < 2) throw DomainError("classifier needs D >= 2");
  if (x < D * D) throw DomainError("classifier needs x >= D^2");
  if (!(alpha > 0.0)) throw DomainError("classifier needs alpha > 0");
  if (grid.D != D || grid.x != x) throw ConfigError("grid built for a different (D, x)");
  const double T_max = classifier_T_max(D, static_cast<double>(x), alpha);
  if (grid.T > T_max * (1.0 + 1e-12))
    throw ConfigError("grid T exceeds exp(log D (log x/log D)^(alpha^2/9))");
  for (const auto p : table.primes()) {
    if (p > D) break;
    if (g.at_prime(p) != cplx{}) throw DomainError("classifier needs g(p) = 0 for p <= D");
  }

  ExceptionalReport rep;
  rep.D = D;
  rep.x = x;
  rep.alpha = alpha;
  rep.T = grid.T;
  rep.slack = slack;
  rep.grid = grid;
  rep.threshold = alpha * std::log(std::log(double(x)) / std::log(double(D))) + slack;

  const auto [first, last] = table.prime_range(D, x);
  std::vector<cplx> w(last - first);
  const auto primes = table.primes();
  for (std::size_t i = first; i < last; ++i) {
    const double p = primes[i];
    w[i - first] = g.at_prime(primes[i]) * std::pow(p, -grid.sigma);
    rep.correction += 1.0 / (p * p);
  }
  rep.correction += 1.0 / static_cast<double>(D);

  const CharacterGroup group(D);
  std::vector<Character> chars;
  for (auto& c : group.characters())
    if (!c.is_principal()) chars.push_back(c);
  rep.characters = grid_maxima(w, group, chars, grid, table);
  for (auto& c : rep.characters) {
    c.exceptional = c.max_logG >= rep.threshold;
    if (c.exceptional) rep.J.push_back(c.chi);
  }
  for (std::size_t i = 0; i < rep.J.size(); ++i)
    for (std::size_t j = i + 1; j < rep.J.size(); ++j)
      rep.pair_orders.push_back({rep.J[i].index(), rep.J[j].index(), (rep.J[i] * rep.J[j].conj()).order()});
  return rep;
}

PlancherelResult plancherel_check(std::span<const cplx> f, double sigma, double T_int) {
  if (!(sigma > 1.0)) throw DomainError("plancherel_check needs sigma > 1");
  if (f.size() > 1001) throw DomainError("plancherel_check supports n <= 1000");
  PlancherelResult out;
  std::vector<double> logn, cr, ci;
  double diag = 0.0;
  for (std::size_t n = 1; n < f.size(); ++n) {
    if (f[n] == cplx{}) continue;
    const double ln = std::log(static_cast<double>(n));
    const cplx c = f[n] * std::exp(-sigma * ln);
    logn.push_back(ln);
    cr.push_back(c.real());
    ci.push_back(c.imag());
    diag += std::norm(c);
  }
  if (logn.empty()) return out;

  const auto integrand = [&](double tau) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < logn.size(); ++i) {
      const double a = -tau * logn[i];
      const double c = std::cos(a), s = std::sin(a);
      re += cr[i] * c - ci[i] * s;
      im += cr[i] * s + ci[i] * c;
    }
    return (re * re + im * im) / (sigma * sigma + tau * tau);
  };
  using GK = boost::math::quadrature::gauss_kronrod<double, 15>;
  const auto pieces = static_cast<int>(std::ceil(2.0 * T_int));
  const double h = 2.0 * T_int / pieces;
  for (int k = 0; k < pieces; ++k) {
    const double a = -T_int + k * h;
    double err = 0.0;
    out.lhs += GK::integrate(integrand, a, a + h, 8, 1e-12, &err);
    out.quad_error += err;
  }
  out.tail = diag * 2.0 * (std::numbers::pi / 2.0 - std::atan(T_int / sigma)) / sigma;
  out.lhs += out.tail;

  // Exact: M is constant on [n, n + 1).
  cplx M{};
  const double s2 = 2.0 * sigma;
  const std::size_t N = f.size() - 1;
  for (std::size_t n = 1; n <= N; ++n) {
    M += f[n];
    const double a = std::pow(double(n), -s2);
    const double b = n < N ? std::pow(double(n + 1), -s2) : 0.0;
    out.rhs += std::norm(M) * (a - b) / s2;
  }
  out.rhs *= 2.0 * std::numbers::pi;
  return out;
}

}  // namespace nt

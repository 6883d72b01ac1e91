#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "nt/error.hpp"
#include "nt/harness.hpp"
#include "nt/kernels.hpp"
#include "nt/lseries.hpp"
#include "nt/meanvalue.hpp"
#include "nt/multfun.hpp"
#include "nt/pretense.hpp"

namespace nt::harness {

namespace {

MF function_or(const ExperimentConfig& cfg, const std::string& fallback) {
  return parse_builtin(cfg.g.empty() ? fallback : cfg.g);
}

std::string tail_name(std::int64_t D) { return "mobius-tail(" + std::to_string(D) + ")"; }

json grid_json(const SemiStripGrid& g) {
  json j;
  j["D"] = g.D;
  j["x"] = g.x;
  j["T"] = g.T;
  j["sigma"] = g.sigma;
  j["dt"] = g.dt;
  j["t_count"] = g.t_count();
  j["intervals_m"] = g.endpoints.size() - 1;
  j["endpoints"] = g.endpoints;
  return j;
}

json exceptional_json(const ExceptionalReport& r) {
  json j;
  j["D"] = r.D;
  j["x"] = r.x;
  j["alpha"] = r.alpha;
  j["T"] = r.T;
  j["threshold"] = r.threshold;
  j["grid_slack"] = r.slack;
  j["log_correction_bound"] = r.correction;
  j["grid"] = grid_json(r.grid);
  json chars = json::array();
  for (const auto& c : r.characters) {
    json e = character_json(c.chi);
    e["max_logG"] = c.max_logG;
    e["t_at_max"] = c.t_at_max;
    e["interval"] = json::array({c.lo, c.hi});
    e["exceptional"] = c.exceptional;
    chars.push_back(e);
  }
  j["characters"] = chars;
  json J = json::array();
  for (const auto& c : r.J) J.push_back(c.index());
  j["J"] = J;
  json po = json::array();
  for (const auto& p : r.pair_orders) po.push_back(json::array({p.i, p.j, p.order}));
  j["pair_orders"] = po;
  return j;
}

ExceptionalReport default_classifier(const MF& g, std::int64_t D, std::int64_t x, double alpha,
                                     double T, const PrimeTable& table) {
  const double T_max = classifier_T_max(D, static_cast<double>(x), alpha);
  return classify_exceptional(g, D, x, alpha, SemiStripGrid::make(D, x, T > 0.0 ? T : T_max), table);
}

json lambda_json(const LambdaResult& l) {
  json j;
  j["T"] = l.T;
  j["t_star"] = l.t_star;
  j["lambda"] = l.lambda;
  j["spacing"] = l.spacing;
  j["refined_spacing"] = l.refined_spacing;
  return j;
}

}  // namespace

EnvelopeLadder envelope_ladder(std::int64_t D, std::span<const std::int64_t> ys, double alpha,
                               const PrimeTable& table) {
  EnvelopeLadder out;
  out.D = D;
  out.ys.assign(ys.begin(), ys.end());
  const std::int64_t x = 1'000'000;
  const MF g = mobius_tail(D);
  const auto rep = default_classifier(g, D, x, alpha, 0.0, table);
  out.J_size = rep.J.size();
  const std::int64_t ymax = *std::max_element(ys.begin(), ys.end());
  const auto values = batch_evaluate(g, ymax, table);
  const CharacterGroup group(D);
  for (const auto y : ys) {
    double worst = 0.0;
    for (const auto a : group.reduced_residues()) {
      const auto d = theorem1_decompose(values, a, y, group, rep.J, alpha, table);
      worst = std::max(worst, std::abs(d.residual) / d.envelope);
    }
    out.worst_ratio.push_back(worst);
  }
  out.verdict = ladder_policy(out.worst_ratio);
  return out;
}

HalaszExperiment halasz_experiment(std::span<const std::int64_t> xs, double T,
                                   std::span<const double> Ts, const PrimeTable& table) {
  HalaszExperiment out;
  out.xs.assign(xs.begin(), xs.end());
  out.Ts.assign(Ts.begin(), Ts.end());
  const MF g = mobius();
  const std::int64_t xmax = *std::max_element(xs.begin(), xs.end());
  const auto mu = batch_evaluate(g, xmax, table);
  for (const auto x : xs) {
    out.mertens.push_back(std::abs(partial_sum_M(mu, x)));
    out.bound.push_back(halasz_bound(g, 2.0, x, T, 1.0, 1.0, 1.0, table).bound);
  }
  out.calibration = out.mertens.front() / out.bound.front();
  for (std::size_t i = 0; i < xs.size(); ++i)
    if (out.calibration * out.bound[i] < out.mertens[i] * (1.0 - 1e-12)) out.bound_ok = false;
  const auto ladder = lambda_ladder([&](std::int64_t p) { return g.at_prime(p); }, 2.0, xmax, Ts, table);
  for (std::size_t i = 0; i < ladder.size(); ++i) {
    out.lambda_T.push_back(ladder[i].lambda);
    if (i > 0 && ladder[i].lambda > ladder[i - 1].lambda) out.lambda_monotone = false;
  }
  return out;
}

CalibrationRung calibrate_rung(std::int64_t D_max, std::int64_t x, const PrimeTable& table) {
  CalibrationRung rung;
  rung.x = x;
  rung.c = -std::numeric_limits<double>::infinity();
  const double lx = std::log(static_cast<double>(x));
  const auto primes = table.primes();

  for (std::int64_t D = 3; D <= D_max; ++D) {
    const double T = static_cast<double>(D * D);
    const auto grid = SemiStripGrid::make(D, x, T);
    const auto [a, b] = table.prime_range(D, x);
    std::vector<cplx> w(b - a);
    for (std::size_t i = a; i < b; ++i) w[i - a] = 1.0 / static_cast<double>(primes[i]);
    const CharacterGroup group(D);
    std::vector<Character> chars;
    for (auto& c : group.characters())
      if (!c.is_principal()) chars.push_back(c);
    const auto matrix = kernels::character_matrix(group, chars);
    kernels::ClassScanSpec spec;
    spec.D = D;
    spec.primes = primes.subspan(a, b - a);
    spec.weights = w;
    spec.endpoints = grid.endpoints;
    spec.t0 = 0.0;
    spec.dt = grid.dt;
    spec.nt = static_cast<std::size_t>(grid.half_steps) + 1;
    const std::size_t nc = chars.size(), rows = grid.endpoints.size();
    // t >= 0 only: negative t for chi is positive t for conj(chi), also in the set.
    const auto best = kernels::scan_classes(spec, [&](std::size_t, double, const kernels::ClassPrefix& p) {
      std::vector<double> sr;
      kernels::to_characters_real(matrix, p, sr);
      double m = -std::numeric_limits<double>::infinity();
      for (std::size_t c = 0; c < nc; ++c) {
        double lo = sr[c];
        for (std::size_t r = 1; r < rows; ++r) {
          const double v = sr[r * nc + c];
          m = std::max(m, v - lo);
          lo = std::min(lo, v);
        }
      }
      return m;
    });
    const auto it = std::max_element(best.begin(), best.end());
    const double cD = *it - std::log(std::log(T) / std::log(static_cast<double>(D)));
    if (cD > rung.c) {
      rung.c = cD;
      rung.c_D = D;
      rung.c_t = grid.dt * static_cast<double>(it - best.begin());
    }
  }

  // Lemma A3: y on a geometric grid in [2, x], t in [0, D_max^2].
  {
    std::vector<std::int64_t> ends{1};
    constexpr int m = 64;
    for (int j = 0; j < m; ++j) {
      const auto e = static_cast<std::int64_t>(std::floor(2.0 * std::pow(static_cast<double>(x) / 2.0, double(j) / m)));
      if (e > ends.back()) ends.push_back(e);
    }
    if (ends.back() < x) ends.push_back(x);
    const auto [a, b] = table.prime_range(1, x);
    std::vector<cplx> w(b - a);
    for (std::size_t i = a; i < b; ++i) w[i - a] = 1.0 / static_cast<double>(primes[i]);
    const double Tc = static_cast<double>(D_max * D_max);
    const double cells = std::ceil(Tc * lx);
    kernels::ClassScanSpec spec;
    spec.D = 1;
    spec.primes = primes.subspan(a, b - a);
    spec.weights = w;
    spec.endpoints = ends;
    spec.t0 = 0.0;
    spec.dt = Tc / cells;
    spec.nt = static_cast<std::size_t>(cells) + 1;
    struct Best {
      double v, y;
    };
    const auto best = kernels::scan_classes(spec, [&](std::size_t, double t, const kernels::ClassPrefix& p) {
      Best bst{-std::numeric_limits<double>::infinity(), 0.0};
      const double top = p.real(p.rows - 1, 0);
      for (std::size_t r = 1; r < p.rows; ++r) {
        const double y = static_cast<double>(ends[r]);
        const double v = top - p.real(r, 0) - psi_bound(y, static_cast<double>(x), t, 0.0).value;
        if (v > bst.v) bst = {v, y};
      }
      return bst;
    });
    rung.c0 = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < best.size(); ++k)
      if (best[k].v > rung.c0) {
        rung.c0 = best[k].v;
        rung.c0_y = best[k].y;
        rung.c0_t = spec.dt * static_cast<double>(k);
      }
  }
  return rung;
}

CalibrationLadder calibrate_ladder(std::int64_t D_max, std::span<const std::int64_t> xs,
                                   const PrimeTable& table) {
  CalibrationLadder out;
  out.D_max = D_max;
  std::vector<double> cs, c0s;
  for (const auto x : xs) {
    out.rungs.push_back(calibrate_rung(D_max, x, table));
    cs.push_back(out.rungs.back().c);
    c0s.push_back(out.rungs.back().c0);
  }
  out.c_verdict = ladder_policy(cs);
  out.c0_verdict = ladder_policy(c0s);
  return out;
}

LinnikResult linnik_experiment(std::int64_t D_max, std::int64_t N, double gamma, const PrimeTable& table) {
  if (D_max < 2 || D_max > 500) throw ConfigError("linnik needs 2 <= D_max <= 500");
  if (N > table.bound()) throw ConfigError("linnik N exceeds the prime table");
  LinnikResult res;
  res.D_max = D_max;
  res.N = N;
  res.gamma = gamma;
  res.tau = std::ldexp(1.0, -10);
  const auto primes = table.primes();
  const double lN = std::log(static_cast<double>(N));
  const auto lo = static_cast<std::int64_t>(std::floor(std::pow(static_cast<double>(N), gamma)));
  const auto [pa, pb] = table.prime_range(lo, N);
  double total = 0.0;
  for (std::size_t i = pa; i < pb; ++i) total += 1.0 / static_cast<double>(primes[i]);

  for (std::int64_t D = 2; D <= D_max; ++D) {
    if (static_cast<double>(D) > std::pow(static_cast<double>(N), gamma)) throw ConfigError("linnik needs D <= N^gamma");
    const CharacterGroup group(D);
    LinnikRow row;
    row.D = D;
    std::vector<std::int64_t> least(static_cast<std::size_t>(D), 0);
    std::size_t missing = group.reduced_residues().size();
    for (const auto p : primes) {
      if (missing == 0) break;
      const auto r = static_cast<std::size_t>(p % D);
      if (least[r] == 0 && group.is_reduced(static_cast<std::int64_t>(r))) {
        least[r] = p;
        --missing;
      }
    }
    if (missing > 0) res.all_found = false;
    for (const auto a : group.reduced_residues()) {
      const auto p = least[static_cast<std::size_t>(a)];
      if (p > row.least_prime) {
        row.least_prime = p;
        row.worst_a = a;
      }
    }
    row.exponent = std::log(static_cast<double>(row.least_prime)) / std::log(static_cast<double>(D));
    res.max_exponent = std::max(res.max_exponent, row.exponent);

    // Real nonprincipal characters, classified for mobius-tail(D) with alpha 1/2, T 1.
    std::vector<Character> reals;
    for (auto& c : group.characters())
      if (!c.is_principal() && c.is_real()) reals.push_back(c);
    if (!reals.empty()) {
      const auto grid = SemiStripGrid::make(D, N, 1.0);
      const auto [a, b] = table.prime_range(D, N);
      std::vector<cplx> w(b - a);
      for (std::size_t i = a; i < b; ++i) w[i - a] = -std::pow(static_cast<double>(primes[i]), -grid.sigma);
      const auto maxima = grid_maxima(w, group, reals, grid, table);
      const double threshold = 0.5 * std::log(lN / std::log(static_cast<double>(D))) + 1.0;
      double best = std::numeric_limits<double>::infinity();
      for (const auto& m : maxima)
        if (m.max_logG >= threshold && m.max_logG < best) {
          best = m.max_logG;
          row.chi = m.chi;
        }
    }

    std::vector<double> cls(static_cast<std::size_t>(D), 0.0);
    double chi_sum = 0.0;
    for (std::size_t i = pa; i < pb; ++i) {
      const std::int64_t p = primes[i];
      cls[static_cast<std::size_t>(p % D)] += 1.0 / static_cast<double>(p);
      if (row.chi) chi_sum += (*row.chi)(p).real() / static_cast<double>(p);
    }
    const double phi = static_cast<double>(group.phi());
    for (const auto a : group.reduced_residues()) {
      double rhs = total;
      if (row.chi) rhs += (*row.chi)(a).real() * chi_sum;
      row.discrepancy = std::max(row.discrepancy, std::abs(phi * cls[static_cast<std::size_t>(a)] - rhs));
    }
    row.shape = std::pow(std::log(static_cast<double>(D)) / lN, res.tau);
    res.rows.push_back(std::move(row));
  }
  for (const auto& r : res.rows)
    if (r.D <= 20) res.calibration = std::max(res.calibration, r.discrepancy / r.shape);
  for (const auto& r : res.rows)
    if (r.discrepancy > res.calibration * r.shape) ++res.violations;
  return res;
}

Report run_decompose(const ExperimentConfig& cfg) {
  const std::int64_t D = cfg.D;
  const std::int64_t y = cfg.y > 0 ? cfg.y : cfg.x;
  const auto table = shared_table(std::max(y, cfg.x));
  const MF g = function_or(cfg, tail_name(D));
  const CharacterGroup group(D);
  std::vector<Character> J;
  Report rep;
  bool small_primes_vanish = true;
  for (const auto p : table->primes()) {
    if (p > D) break;
    if (g.at_prime(p) != cplx{}) small_primes_vanish = false;
  }
  if (D >= 2 && cfg.x >= D * D && small_primes_vanish) {
    const auto ex = default_classifier(g, D, cfg.x, cfg.alpha, cfg.T, *table);
    J = ex.J;
    rep.body["classifier"] = exceptional_json(ex);
  } else {
    rep.body["classifier"] = "skipped: needs D >= 2, x >= D^2 and g(p) = 0 for p <= D; J empty";
  }
  const auto values = batch_evaluate(g, y, *table);
  json items = json::array();
  double worst = 0.0;
  for (const auto a : group.reduced_residues()) {
    const auto a1 = D == 1 ? 1 : a;
    const auto d = theorem1_decompose(values, a1, y, group, J, cfg.alpha, *table);
    json j;
    j["y"] = d.y;
    j["D"] = d.D;
    j["a"] = a1;
    j["alpha"] = d.alpha;
    j["progression_sum"] = complex_json(d.progression_sum);
    j["principal_term"] = complex_json(d.principal_term);
    json ex = json::array();
    for (const auto& e : d.exceptional) ex.push_back(json::array({e.chi.index(), complex_json(e.value)}));
    j["exceptional"] = ex;
    j["residual"] = complex_json(d.residual);
    j["envelope"] = d.envelope;
    j["simplified_envelope"] = d.simplified_envelope;
    j["ratio"] = std::abs(d.residual) / d.envelope;
    worst = std::max(worst, std::abs(d.residual) / d.envelope);
    items.push_back(j);
  }
  rep.body["decompositions"] = items;
  rep.body["max_residual_over_envelope"] = worst;
  rep.body["function"] = g.name();
  return rep;
}

Report run_exceptional(const ExperimentConfig& cfg) {
  const auto table = shared_table(cfg.x);
  const MF g = function_or(cfg, tail_name(cfg.D));
  const auto ex = default_classifier(g, cfg.D, cfg.x, cfg.alpha, cfg.T, *table);
  Report rep;
  rep.body = exceptional_json(ex);
  rep.body["function"] = g.name();
  rep.body["J_size"] = ex.J.size();
  rep.body["count_scale_alpha_minus_2"] = 1.0 / (cfg.alpha * cfg.alpha);
  return rep;
}

Report run_taxonomy(const ExperimentConfig& cfg) {
  const auto table = shared_table(cfg.x);
  const MF g = function_or(cfg, tail_name(cfg.D));
  const auto t = taxonomy_pipeline(g, cfg.D, cfg.x, cfg.c, cfg.c1, cfg.k, cfg.alpha, *table);
  Report rep;
  json& b = rep.body;
  b = exceptional_json(t.classifier);
  b["function"] = g.name();
  b["c"] = t.c;
  b["c1"] = t.c1;
  b["k"] = t.k;
  b["delta"] = t.delta;
  b["L"] = t.L;
  b["T_A"] = t.T_A;
  b["Z"] = t.Z;
  b["hypothesis"] = {{"min_tail_sum", t.min_tail_sum},
                     {"min_tail_sum_k", t.min_tail_sum_k},
                     {"applicable", t.applicable},
                     {"applicable_k", t.applicable_k}};
  json lam = json::array();
  for (const auto& e : t.entries) {
    json j = character_json(e.chi);
    j["lambda"] = lambda_json(e.lambda);
    j["removable"] = e.removable;
    j["max_logG"] = e.max_logG;
    j["theorem_A_bound_terms"] = {{"Z_sum", e.Z_sum},
                                  {"exceptional_sum", e.exceptional_sum},
                                  {"bound", e.exceptional_bound}};
    lam.push_back(j);
  }
  b["lambda"] = lam;
  json po = json::array();
  for (const auto& p : t.pair_orders) po.push_back(json::array({p.i, p.j, p.order}));
  b["retained_pair_orders"] = po;
  b["pair_order_limit"] = t.pair_order_limit;
  b["order_limit_k"] = t.order_limit_k;
  b["pair_orders_ok"] = t.pair_orders_ok;
  b["orders_k_ok"] = t.orders_k_ok;
  bool real_single = t.classifier.J.size() <= 1;
  for (const auto& c : t.classifier.J) real_single = real_single && c.is_real();
  b["at_most_one_real"] = real_single;
  rep.flagged = !t.pair_orders_ok;
  return rep;
}

Report run_halasz(const ExperimentConfig& cfg) {
  const auto table = shared_table(cfg.x);
  const MF g = function_or(cfg, "mobius");
  const double T = cfg.T > 0.0 ? cfg.T : 100.0;
  const auto h = halasz_bound(g, 2.0, cfg.x, T, cfg.beta, cfg.c, cfg.c1, *table);
  const auto v = batch_evaluate(g, cfg.x, *table);
  const double actual = std::abs(partial_sum_M(v, cfg.x));
  Report rep;
  json& b = rep.body;
  b["function"] = g.name();
  b["x"] = cfg.x;
  b["Y"] = 2.0;
  b["T"] = T;
  b["actual_abs_M"] = actual;
  b["lambda"] = lambda_json(h.lambda);
  b["main_factor"] = h.main_factor;
  b["exp_term"] = h.exp_term;
  b["T_term"] = h.T_term;
  b["bound"] = h.bound;
  b["ratio"] = actual / h.bound;
  b["hypotheses"] = {{"max_abs_g", h.max_abs_g},
                     {"beta_ok", h.beta_ok},
                     {"min_tail_sum", h.min_tail_sum},
                     {"lower_bound_ok", h.lower_bound_ok},
                     {"gamma", h.gamma},
                     {"higher_power_series_partial", h.higher_power_series},
                     {"applicable", h.applicable}};
  rep.flagged = !h.applicable;
  return rep;
}

Report run_linnik(const ExperimentConfig& cfg) {
  const std::int64_t N = 1'000'000;
  const auto table = shared_table(N);
  const auto r = linnik_experiment(cfg.D, N, 0.5, *table);
  Report rep;
  json& b = rep.body;
  b["D_max"] = r.D_max;
  b["N"] = r.N;
  b["gamma"] = r.gamma;
  b["tau"] = r.tau;
  b["all_found"] = r.all_found;
  b["max_exponent"] = r.max_exponent;
  b["calibration_D_le_20"] = r.calibration;
  b["shape_violations"] = r.violations;
  json rows = json::array();
  for (const auto& row : r.rows) {
    json j;
    j["D"] = row.D;
    j["worst_a"] = row.worst_a;
    j["least_prime"] = row.least_prime;
    j["exponent"] = row.exponent;
    j["chi"] = row.chi ? character_json(*row.chi) : json(nullptr);
    j["discrepancy"] = row.discrepancy;
    j["shape"] = row.shape;
    rows.push_back(j);
  }
  b["moduli"] = rows;
  rep.flagged = !r.all_found || r.violations > 0;
  return rep;
}

Report run_sieve_stats(const ExperimentConfig& cfg) {
  const auto table = shared_table(cfg.x);
  const auto av = arith_values(*table);
  Report rep;
  json& b = rep.body;
  std::int64_t mertens = 0;
  double cheb = 0.0;
  std::int64_t squarefree = 0;
  for (std::int64_t n = 1; n <= cfg.x; ++n) {
    mertens += av.mobius[static_cast<std::size_t>(n)];
    cheb += av.von_mangoldt[static_cast<std::size_t>(n)];
    squarefree += av.mobius[static_cast<std::size_t>(n)] != 0;
  }
  b["x"] = cfg.x;
  b["pi_x"] = table->pi(cfg.x);
  b["mertens"] = mertens;
  b["chebyshev_psi"] = cheb;
  b["squarefree_count"] = squarefree;
  b["prime_reciprocal_sum_2_x"] = cfg.x > 2 ? prime_reciprocal_sum(*table, 2, cfg.x) : 0.0;
  if (cfg.D >= 2 && cfg.D <= cfg.x) b["prime_reciprocal_sum_D_x"] = prime_reciprocal_sum(*table, cfg.D, cfg.x);
  return rep;
}

}  // namespace nt::harness

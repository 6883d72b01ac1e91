// Acceptance checks A1..A10. Usage: nt_acceptance [A1 ... A10]; no argument runs all.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "nt/arith.hpp"
#include "nt/dirichlet.hpp"
#include "nt/harness.hpp"
#include "nt/kernels.hpp"
#include "nt/lseries.hpp"
#include "nt/multfun.hpp"
#include "nt/pretense.hpp"
#include "nt/rng.hpp"

using namespace nt;
namespace h = nt::harness;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

const PrimeTable& table() {
  static const auto t = h::shared_table(1'000'000);
  return *t;
}

Outcome a1() {
  h::ExperimentConfig cfg;
  cfg.seed = 20240601;
  const auto rep = h::run_verify("I5", cfg);
  double worst = 0.0;
  std::size_t fails = 0;
  for (const auto& r : rep.rows) {
    worst = std::max(worst, *r.calibration);
    fails += r.status != "pass";
  }
  std::ostringstream os;
  os << rep.rows.size() << " instances, max rel err " << worst;
  return {fails == 0 && rep.rows.size() == 100, os.str()};
}

Outcome a2() {
  std::size_t bad_orth = 0, bad_mult = 0, bad_struct = 0, bad_order = 0;
  double worst = 0.0;
  for (std::int64_t D = 1; D <= 200; ++D) {
    const CharacterGroup g(D);
    std::int64_t prod = 1;
    for (const auto& gen : g.generators()) prod *= gen.order;
    if (prod != g.phi() || g.phi() != euler_phi(D)) ++bad_struct;
    const auto chars = g.characters();
    if (chars.size() != static_cast<std::size_t>(g.phi())) ++bad_struct;
    std::vector<std::vector<cplx>> table(chars.size());
    for (std::size_t i = 0; i < chars.size(); ++i)
      for (std::int64_t a = 1; a <= D; ++a) table[i].push_back(chars[i](a));
    for (std::size_t i = 0; i < chars.size(); ++i)
      for (std::size_t j = 0; j < chars.size(); ++j) {
        cplx s{};
        for (std::int64_t a = 0; a < D; ++a) s += table[i][static_cast<std::size_t>(a)] * std::conj(table[j][static_cast<std::size_t>(a)]);
        const double err = std::abs(s - cplx(i == j ? double(g.phi()) : 0.0));
        worst = std::max(worst, err);
        if (err > 1e-9) ++bad_orth;
      }
    for (const auto& chi : chars) {
      for (std::int64_t m = 1; m <= 50; ++m)
        for (std::int64_t n = 1; n <= 50; ++n)
          if (std::abs(chi(m * n) - chi(m) * chi(n)) > 1e-12) ++bad_mult;
      // Exact order: chi^k principal exactly at k = order, not before.
      auto p = chi;
      std::int64_t k = 1;
      while (!p.is_principal()) {
        p = p * chi;
        ++k;
      }
      if (k != chi.order() || g.phi() % k != 0) ++bad_order;
    }
  }
  std::ostringstream os;
  os << "D<=200: orthogonality max err " << worst << ", failures orth/mult/struct/order = " << bad_orth << "/"
     << bad_mult << "/" << bad_struct << "/" << bad_order;
  return {bad_orth + bad_mult + bad_struct + bad_order == 0, os.str()};
}

Outcome a3() {
  std::size_t checked = 0, bad = 0;
  double worst = 0.0;
  for (std::int64_t D = 3; D <= 500; ++D) {
    const CharacterGroup g(D);
    std::vector<Character> chars;
    for (auto& c : g.characters())
      if (!c.is_principal()) chars.push_back(c);
    const auto m = kernels::max_partial_sums(chars, 10 * D);
    const double env = std::sqrt(double(D)) * std::log(double(D));
    for (const double v : m) {
      ++checked;
      worst = std::max(worst, v / env);
      if (v > env) ++bad;
    }
  }
  std::ostringstream os;
  os << checked << " characters, max partial sum / (sqrt(D) log D) = " << worst << ", violations " << bad;
  return {bad == 0, os.str()};
}

Outcome a4() {
  h::ExperimentConfig cfg;
  cfg.seed = 7;
  const auto rep = h::run_verify("I7", cfg);
  double worst = 0.0;
  std::size_t fails = 0;
  for (const auto& r : rep.rows) {
    worst = std::max(worst, *r.calibration);
    fails += r.status != "pass";
  }
  std::ostringstream os;
  os << rep.rows.size() << " (f, sigma) pairs, max |lhs-rhs|/rhs = " << worst;
  return {fails == 0 && rep.rows.size() == 60, os.str()};
}

const std::vector<std::int64_t>& a5_moduli() {
  static const std::vector<std::int64_t> m{3, 4, 5, 7, 8, 11, 12, 13, 16, 19, 24, 29, 31, 37, 43, 53, 61, 71, 83, 97};
  return m;
}

Outcome a5() {
  std::size_t bad = 0, total_J = 0;
  double worst_margin = -1e300;
  for (const auto D : a5_moduli()) {
    const std::int64_t x = 1'000'000;
    const auto grid = SemiStripGrid::make(D, x, classifier_T_max(D, double(x), 0.5));
    const auto rep = classify_exceptional(mobius_tail(D), D, x, 0.5, grid, table());
    total_J += rep.J.size();
    bool ok = rep.J.size() <= 1;
    for (const auto& c : rep.J) ok = ok && c.order() <= 2;
    for (const auto& c : rep.characters) worst_margin = std::max(worst_margin, c.max_logG - rep.threshold);
    if (!ok) ++bad;
  }
  std::ostringstream os;
  os << a5_moduli().size() << " moduli, total |J| = " << total_J << ", max(max_logG - threshold) = " << worst_margin
     << ", moduli violating = " << bad;
  return {bad == 0, os.str()};
}

Outcome a6() {
  const std::vector<std::int64_t> ys{10'000, 100'000, 1'000'000};
  bool ok = true;
  std::ostringstream os;
  for (const std::int64_t D : {5, 11, 31}) {
    const auto l = h::envelope_ladder(D, ys, 0.5, table());
    ok = ok && l.verdict.pass;
    os << "D=" << D << " |J|=" << l.J_size << " ratios";
    for (const double r : l.worst_ratio) os << ' ' << r;
    os << "; ";
  }
  return {ok, os.str()};
}

Outcome a7() {
  const std::vector<std::int64_t> xs{10'000, 100'000, 1'000'000};
  const std::vector<double> Ts{1.0, 10.0, 100.0};
  const auto e = h::halasz_experiment(xs, 100.0, Ts, table());
  std::ostringstream os;
  os << "C=" << e.calibration << " C*bound/|M|:";
  for (std::size_t i = 0; i < xs.size(); ++i) os << ' ' << e.calibration * e.bound[i] / e.mertens[i];
  os << "; lambda(T):";
  for (const double l : e.lambda_T) os << ' ' << l;
  return {e.bound_ok && e.lambda_monotone, os.str()};
}

Outcome a8() {
  CounterRng rng(88);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const int N = static_cast<int>(rng.integer(1, 50));
    const double theta = rng.uniform(-2.0, 2.0);
    worst = std::max(worst, std::abs(fejer_kernel(N, theta) - fejer_kernel_sum(N, theta)));
  }
  bool ok = worst <= 1e-10;
  std::ostringstream os;
  os << "kernel max diff " << worst << ";";
  for (const std::int64_t D : {7, 13, 19, 31, 37}) {
    const CharacterGroup g(D);
    const std::vector<std::int64_t> e{(D - 1) / 3};
    const auto chi = g.character(e);
    std::vector<bool> cube(static_cast<std::size_t>(D), false);
    for (std::int64_t a = 1; a < D; ++a) cube[static_cast<std::size_t>(a * a % D * a % D)] = true;
    const auto hfun = [&](std::int64_t p) { return cube[static_cast<std::size_t>(p % D)] ? 1.0 : 0.0; };
    const auto r = order_test_A1(hfun, chi, 0.0, 1e-4, 1'000'000, double(D), 0.0, table());
    const bool good = r.hypothesis_sum == 0.0 && r.order == 3 && r.consistent;
    ok = ok && good;
    os << " D=" << D << ":" << to_string(r.verdict) << (good ? "" : "(inconsistent)");
  }
  return {ok, os.str()};
}

Outcome a9() {
  const std::vector<std::int64_t> xs{100'000, 125'000, 250'000, 500'000, 1'000'000};
  const auto lad = h::calibrate_ladder(50, xs, table());
  std::ostringstream os;
  bool finite = true;
  os << "c:";
  for (const auto& r : lad.rungs) {
    os << ' ' << r.c;
    finite = finite && std::isfinite(r.c) && std::isfinite(r.c0);
  }
  os << "; c0:";
  for (const auto& r : lad.rungs) os << ' ' << r.c0;
  return {finite && lad.c_verdict.pass && lad.c0_verdict.pass, os.str()};
}

Outcome a10() {
  const auto r = h::linnik_experiment(300, 1'000'000, 0.5, table());
  std::ostringstream os;
  os << "all classes found: " << (r.all_found ? "yes" : "no") << ", max exponent " << r.max_exponent
     << ", calibration (D<=20) " << r.calibration << ", moduli above calibrated shape " << r.violations << "/"
     << r.rows.size();
  return {r.all_found && r.violations == 0, os.str()};
}

struct Criterion {
  Outcome (*run)();
  double limit_s;
};

}  // namespace

int main(int argc, char** argv) {
  const std::map<std::string, Criterion> all{
      {"A1", {a1, 10}},   {"A2", {a2, 30}},   {"A3", {a3, 60}},  {"A4", {a4, 60}},   {"A5", {a5, 300}},
      {"A6", {a6, 300}},  {"A7", {a7, 120}},  {"A8", {a8, 60}},  {"A9", {a9, 300}},  {"A10", {a10, 300}},
  };
  std::vector<std::string> ids;
  for (int i = 1; i < argc; ++i) ids.emplace_back(argv[i]);
  if (ids.empty())
    for (int i = 1; i <= 10; ++i) ids.push_back("A" + std::to_string(i));
  int failures = 0;
  for (const auto& id : ids) {
    const auto it = all.find(id);
    if (it == all.end()) {
      std::printf("%s FAIL unknown criterion\n", id.c_str());
      ++failures;
      continue;
    }
    const auto t0 = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = it->second.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = secs < it->second.limit_s;
    const bool pass = o.pass && in_time;
    std::printf("%s %s %s [%.2fs, limit %.0fs%s]\n", id.c_str(), pass ? "PASS" : "FAIL", o.detail.c_str(), secs,
                it->second.limit_s, in_time ? "" : ", over time");
    std::fflush(stdout);
    failures += !pass;
  }
  return failures == 0 ? 0 : 1;
}

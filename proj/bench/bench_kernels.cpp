// Parallel kernels against their serial references.
#include <omp.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <vector>

#include <CLI11.hpp>

#include "nt/arith.hpp"
#include "nt/dirichlet.hpp"
#include "nt/kernels.hpp"
#include "nt/rng.hpp"

using namespace nt;

namespace {

template <class F>
double seconds(F&& f, int reps) {
  double best = 1e300;
  for (int r = 0; r < reps; ++r) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    const auto t1 = std::chrono::steady_clock::now();
    best = std::min(best, std::chrono::duration<double>(t1 - t0).count());
  }
  return best;
}

void row(const char* name, double par, double ser, double diff) {
  std::printf("%-18s %10.4f %10.4f %8.2fx   max|diff| %.2e\n", name, par, ser, ser / par, diff);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"kernel benchmark"};
  std::int64_t x = 1'000'000;
  std::int64_t D = 12;
  std::size_t nt = 2048;
  int reps = 3;
  int threads = 0;
  app.add_option("--x", x, "prime range upper end");
  app.add_option("--D", D, "modulus for the class scan");
  app.add_option("--nt", nt, "t grid steps");
  app.add_option("--reps", reps, "best of this many runs");
  app.add_option("--threads", threads, "OpenMP threads (0: runtime default)");
  CLI11_PARSE(app, argc, argv);
  if (threads > 0) omp_set_num_threads(threads);

  const auto table = build_prime_table(x);
  std::printf("threads %d, x %lld, D %lld, nt %zu\n", omp_get_max_threads(), static_cast<long long>(x),
              static_cast<long long>(D), nt);
  std::printf("%-18s %10s %10s %9s\n", "kernel", "parallel", "serial", "speedup");

  CounterRng rng(1);
  const auto primes = table.primes();

  {
    const auto [a, b] = table.prime_range(D, x);
    std::vector<cplx> w(b - a);
    for (std::size_t i = a; i < b; ++i) w[i - a] = 1.0 / static_cast<double>(primes[i]);
    std::vector<std::int64_t> ends;
    for (int j = 0; j <= 64; ++j) {
      const auto e = static_cast<std::int64_t>(static_cast<double>(D) * std::pow(double(x) / double(D), j / 64.0));
      if (ends.empty() || e > ends.back()) ends.push_back(e);
    }
    ends.back() = x;
    kernels::ClassScanSpec spec;
    spec.D = D;
    spec.primes = primes.subspan(a, b - a);
    spec.weights = w;
    spec.endpoints = ends;
    spec.t0 = -10.0;
    spec.dt = 20.0 / static_cast<double>(nt);
    spec.nt = nt;
    const CharacterGroup g(D);
    const auto chars = g.characters();
    std::vector<std::vector<cplx>> p, s;
    const double tp = seconds([&] { p = kernels::character_prefix(spec, g, chars); }, reps);
    // the serial reference is direct per (chi, t, p); one run is enough
    const double ts = seconds([&] { s = kernels::character_prefix_serial(spec, chars); }, 1);
    double diff = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k)
      for (std::size_t i = 0; i < p[k].size(); ++i) diff = std::max(diff, std::abs(p[k][i] - s[k][i]));
    row("character_prefix", tp, ts, diff);
  }

  {
    kernels::LambdaPrimes lp;
    for (const auto p : primes) {
      const cplx v = rng.unit_disc();
      lp.abs_g.push_back(std::abs(v));
      lp.re_g.push_back(v.real());
      lp.im_g.push_back(v.imag());
      lp.logp.push_back(std::log(static_cast<double>(p)));
      lp.inv_p.push_back(1.0 / p);
    }
    std::vector<double> ts(nt);
    for (std::size_t i = 0; i < nt; ++i) ts[i] = -50.0 + 100.0 * static_cast<double>(i) / static_cast<double>(nt);
    std::vector<double> p, s;
    const double tp = seconds([&] { p = kernels::lambda_values(lp, ts); }, reps);
    const double tsr = seconds([&] { s = kernels::lambda_values_serial(lp, ts); }, reps);
    double diff = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) diff = std::max(diff, std::abs(p[i] - s[i]));
    row("lambda_values", tp, tsr, diff);
  }

  {
    std::vector<cplx> f(static_cast<std::size_t>(x) + 1);
    for (std::size_t n = 1; n < f.size(); ++n) f[n] = rng.unit_disc();
    std::vector<cplx> p, s;
    const double tp = seconds([&] { p = kernels::class_sums(f, 997, x); }, reps);
    const double tsr = seconds([&] { s = kernels::class_sums_serial(f, 997, x); }, reps);
    double diff = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) diff = std::max(diff, std::abs(p[i] - s[i]));
    row("class_sums", tp, tsr, diff);
  }

  {
    const CharacterGroup g(1009);
    const auto chars = g.characters();
    std::vector<double> p, s;
    const double tp = seconds([&] { p = kernels::max_partial_sums(chars, 1009); }, reps);
    const double tsr = seconds([&] { s = kernels::max_partial_sums_serial(chars, 1009); }, reps);
    double diff = 0.0;
    for (std::size_t i = 0; i < p.size(); ++i) diff = std::max(diff, std::abs(p[i] - s[i]));
    row("max_partial_sums", tp, tsr, diff);
  }
  return 0;
}

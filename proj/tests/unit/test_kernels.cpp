#include <doctest.h>

#include <omp.h>

#include <cmath>
#include <vector>

#include "nt/arith.hpp"
#include "nt/dirichlet.hpp"
#include "nt/kernels.hpp"
#include "nt/rng.hpp"

using namespace nt;

namespace {

const PrimeTable& table() {
  static const auto t = build_prime_table(200000);
  return t;
}

struct ScanFixture {
  std::vector<cplx> w;
  std::vector<std::int64_t> ends;
  kernels::ClassScanSpec spec;
};

ScanFixture make_fixture(std::int64_t D, std::int64_t lo, std::int64_t hi, std::size_t nt) {
  ScanFixture f;
  const auto [a, b] = table().prime_range(lo, hi);
  CounterRng rng(static_cast<std::uint64_t>(D));
  for (std::size_t i = a; i < b; ++i) f.w.push_back(rng.unit_disc() / static_cast<double>(table().primes()[i]));
  for (std::int64_t e = lo; e < hi; e = e * 3 / 2 + 1) f.ends.push_back(e);
  f.ends.push_back(hi);
  f.spec.D = D;
  f.spec.primes = table().primes().subspan(a, b - a);
  f.spec.weights = f.w;
  f.spec.endpoints = f.ends;
  f.spec.t0 = -3.0;
  f.spec.dt = 0.0071;
  f.spec.nt = nt;
  return f;
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("character prefix: parallel vs serial") {
  for (std::int64_t D : {1, 4, 7, 12}) {
    const auto f = make_fixture(D, 10, 50000, 1300);  // crosses two anchor blocks
    const CharacterGroup g(D);
    const auto chars = g.characters();
    const auto par = kernels::character_prefix(f.spec, g, chars);
    const auto ser = kernels::character_prefix_serial(f.spec, chars);
    REQUIRE(par.size() == ser.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < par.size(); ++k) {
      REQUIRE(par[k].size() == ser[k].size());
      for (std::size_t i = 0; i < par[k].size(); ++i) worst = std::max(worst, std::abs(par[k][i] - ser[k][i]));
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("scan does not depend on the thread count") {
  const auto f = make_fixture(9, 10, 30000, 2000);
  const auto run = [&] {
    return kernels::scan_classes(f.spec, [](std::size_t, double, const kernels::ClassPrefix& p) {
      double s = 0.0;
      for (std::size_t i = 0; i < p.re.size(); ++i) s += p.re[i] * double(i + 1) - p.im[i];
      return s;
    });
  };
  const int saved = omp_get_max_threads();
  omp_set_num_threads(1);
  const auto one = run();
  omp_set_num_threads(4);
  const auto four = run();
  omp_set_num_threads(saved);
  REQUIRE(one.size() == four.size());
  for (std::size_t k = 0; k < one.size(); ++k) CHECK(one[k] == four[k]);
}

TEST_CASE("lambda values: parallel vs serial") {
  kernels::LambdaPrimes lp;
  CounterRng rng(3);
  for (const auto p : table().primes()) {
    if (p < 5) continue;
    const cplx v = rng.unit_disc();
    lp.abs_g.push_back(std::abs(v));
    lp.re_g.push_back(v.real());
    lp.im_g.push_back(v.imag());
    lp.logp.push_back(std::log(double(p)));
    lp.inv_p.push_back(1.0 / p);
  }
  std::vector<double> ts;
  for (int i = -1500; i <= 1500; ++i) ts.push_back(i * 0.013);
  const auto par = kernels::lambda_values(lp, ts);
  const auto ser = kernels::lambda_values_serial(lp, ts);
  REQUIRE(par.size() == ts.size());
  for (std::size_t i = 0; i < ts.size(); ++i) {
    CHECK(par[i] == doctest::Approx(ser[i]).epsilon(1e-12));
    CHECK(par[i] >= -1e-12);
  }
}

TEST_CASE("class sums: parallel vs serial vs direct") {
  CounterRng rng(5);
  std::vector<cplx> f(100001);
  for (std::size_t n = 1; n < f.size(); ++n) f[n] = rng.unit_disc();
  for (std::int64_t D : {1, 3, 10, 97, 1000}) {
    const auto par = kernels::class_sums(f, D, 100000);
    const auto ser = kernels::class_sums_serial(f, D, 100000);
    REQUIRE(par.size() == static_cast<std::size_t>(D));
    for (std::int64_t a = 0; a < D; ++a) {
      cplx ref{};
      for (std::int64_t n = a == 0 ? D : a; n <= 100000; n += D) ref += f[static_cast<std::size_t>(n)];
      CHECK(std::abs(par[static_cast<std::size_t>(a)] - ser[static_cast<std::size_t>(a)]) < 1e-9);
      CHECK(std::abs(par[static_cast<std::size_t>(a)] - ref) < 1e-9);
    }
  }
}

TEST_CASE("max partial sums: parallel vs serial vs direct") {
  for (std::int64_t D : {5, 11, 24}) {
    const CharacterGroup g(D);
    const auto chars = g.characters();
    const auto par = kernels::max_partial_sums(chars, 5000);
    const auto ser = kernels::max_partial_sums_serial(chars, 5000);
    for (std::size_t i = 0; i < chars.size(); ++i) {
      double best = 0.0;
      cplx s{};
      for (std::int64_t n = 1; n <= 5000; ++n) {
        s += chars[i](n);
        best = std::max(best, std::abs(s));
      }
      CHECK(par[i] == doctest::Approx(ser[i]).epsilon(1e-12));
      CHECK(par[i] == doctest::Approx(best).epsilon(1e-9));
    }
  }
}

}

#include <doctest.h>

#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

#include "nt/arith.hpp"
#include "nt/dirichlet.hpp"
#include "nt/error.hpp"
#include "nt/meanvalue.hpp"
#include "nt/multfun.hpp"
#include "nt/rng.hpp"
#include "oracle.hpp"

using namespace nt;

namespace {

const PrimeTable& table() {
  static const auto t = build_prime_table(1'000'000);
  return t;
}

std::vector<cplx> random_values(std::uint64_t seed, std::int64_t x) {
  CounterRng rng(seed);
  std::vector<cplx> b(static_cast<std::size_t>(x) + 1);
  for (std::int64_t n = 1; n <= x; ++n) b[static_cast<std::size_t>(n)] = rng.unit_disc();
  return b;
}

}  // namespace

TEST_SUITE("meanvalue") {

TEST_CASE("partial sums") {
  const auto mu = batch_evaluate(mobius(), 10, table());
  CHECK(partial_sum_M(mu, 10) == cplx{-1.0, 0.0});
  CHECK(partial_sum_N(mu, 1) == cplx{});
  const auto ones = batch_evaluate(one(), 1000, table());
  for (std::int64_t x : {1, 7, 1000}) CHECK(partial_sum_M(ones, x) == cplx{static_cast<double>(x), 0.0});
  const auto f = random_values(4, 500);
  cplx n_ref{};
  for (std::size_t n = 1; n <= 500; ++n) n_ref += f[n] * std::log(static_cast<double>(n));
  CHECK(std::abs(partial_sum_N(f, 500) - n_ref) < 1e-10);
  CHECK_THROWS_AS(partial_sum_M(mu, 11), DomainError);
}

TEST_CASE("character_sum matches direct sum") {
  const auto f = random_values(5, 2000);
  const CharacterGroup g(9);
  for (const auto& chi : g.characters()) {
    cplx ref{};
    for (std::int64_t n = 1; n <= 2000; ++n) ref += f[static_cast<std::size_t>(n)] * chi(n);
    CHECK(std::abs(character_sum(f, chi, 2000) - ref) < 1e-10);
  }
}

TEST_CASE("progression sums") {
  const auto f = random_values(6, 5000);
  for (std::int64_t D : {1, 2, 7, 12, 30, 97}) {
    const auto ps = progression_sums(f, D, 5000);
    cplx total{};
    for (std::int64_t a = 0; a < D; ++a) {
      cplx ref{};
      const bool reduced = std::gcd(a, D) == 1;
      if (reduced)
        for (std::int64_t n = a == 0 ? D : a; n <= 5000; n += D) ref += f[static_cast<std::size_t>(n)];
      CHECK(std::abs(ps.at(a) - ref) < 1e-10);
      total += ps.at(a);
    }
    CHECK(std::abs(total - ps.coprime_total) < 1e-10);
  }
}

TEST_CASE("Y functional") {
  const auto mu = batch_evaluate(mobius(), 20, table());
  CHECK(std::abs(Y(mu, 1, 20, 3, {}) - cplx{-1.0, 0.0}) < 1e-15);

  const auto f = random_values(7, 3000);
  for (std::int64_t D : {5, 8, 15}) {
    const CharacterGroup g(D);
    const auto all = g.characters();
    for (const auto a : g.reduced_residues()) {
      CHECK(std::abs(Y(f, a, 3000, D, all)) < 1e-9);
      CHECK(std::abs(Y(f, a, 3000, D, {}) - progression_sums(f, D, 3000).at(a)) < 1e-12);
    }
  }
  CHECK_THROWS_AS(Y(f, 2, 100, 4, {}), DomainError);
}

TEST_CASE("I5 identity") {
  const std::vector<cplx> zero(101);
  const CharacterGroup g12(12);
  const std::vector<std::size_t> J0{0};
  const auto z = lemma_I5_check(zero, g12, J0);
  CHECK(z.lhs == 0.0);
  CHECK(z.rhs == 0.0);

  const auto b = random_values(8, 200);
  std::vector<std::size_t> all(g12.size());
  std::iota(all.begin(), all.end(), 0);
  CHECK(lemma_I5_check(b, g12, all).lhs < 1e-12);

  const auto r = lemma_I5_check(b, g12, J0);
  CHECK(r.lhs == doctest::Approx(r.rhs).epsilon(1e-9));

  // rhs by direct character sums
  double rhs = 0.0;
  for (const auto& chi : g12.characters()) {
    if (chi.index() == 0) continue;
    cplx B{};
    for (std::int64_t n = 1; n <= 200; ++n) B += b[static_cast<std::size_t>(n)] * chi(n);
    rhs += std::norm(B);
  }
  CHECK(r.rhs == doctest::Approx(rhs).epsilon(1e-12));

  CounterRng rng(99);
  for (int i = 0; i < 50; ++i) {
    const auto D = rng.integer(1, 60);
    const CharacterGroup g(D);
    std::vector<std::size_t> J;
    for (std::size_t j = 0; j < g.size(); ++j)
      if (rng.uniform() < 0.3) J.push_back(j);
    const auto bb = random_values(1000 + static_cast<std::uint64_t>(i), rng.integer(1, 300));
    const auto c = lemma_I5_check(bb, g, J);
    CHECK(std::abs(c.lhs - c.rhs) <= 1e-9 * std::max(c.rhs, 1.0));
  }
}

TEST_CASE("decomposition examples") {
  const auto ones = batch_evaluate(one(), 100, table());
  const CharacterGroup g2(2);
  const auto r = theorem1_decompose(ones, 1, 100, g2, {}, 0.5, table());
  CHECK(r.progression_sum == cplx{50.0, 0.0});
  CHECK(std::abs(r.principal_term - 50.0) < 1e-12);
  CHECK(std::abs(r.residual) < 1e-12);

  const auto f = batch_evaluate(random_unitdisc(3), 500, table());
  const CharacterGroup g1(1);
  const auto d1 = theorem1_decompose(f, 0, 500, g1, {}, 0.5, table());
  CHECK(std::abs(d1.progression_sum - partial_sum_M(f, 500)) < 1e-10);
  CHECK(std::abs(d1.principal_term - partial_sum_M(f, 500)) < 1e-10);
  CHECK(std::abs(d1.residual) < 1e-10);

  // residual = progression - principal - exceptional
  const CharacterGroup g7(7);
  const std::vector<Character> J{g7.character(3)};
  const auto d7 = theorem1_decompose(f, 3, 500, g7, J, 0.5, table());
  REQUIRE(d7.exceptional.size() == 1);
  CHECK(std::abs(d7.progression_sum - d7.principal_term - d7.exceptional[0].value - d7.residual) < 1e-10);
  CHECK(std::abs(d7.residual - Y(f, 3, 500, 7, std::vector<Character>{g7.principal(), J[0]})) < 1e-10);
  CHECK_THROWS_AS(theorem1_decompose(f, 3, 500, g7, std::vector<Character>{g7.principal()}, 0.5, table()),
                  DomainError);
}

TEST_CASE("envelope shape") {
  const auto f = batch_evaluate(mobius_tail(5), 100000, table());
  const double e = theorem1_envelope(f, 100000, 5, 0.5, table());
  // p <= 5 coprime to 5 with g(p) = 0: product is 1
  const double ref = 1e5 / (4.0 * std::log(1e5)) * std::pow(std::log(1e5) / std::log(5.0), 0.5);
  CHECK(e == doctest::Approx(ref).epsilon(1e-12));
}

TEST_CASE("shiu-type bound") {
  const auto r = shiu_bound_check(one(), 1, 3, 10000, table());
  CHECK(r.lhs == 3334.0);
  CHECK(std::isfinite(r.ratio));

  const MF delta(Mode::general, [](std::int64_t, int) { return cplx{}; }, true, "delta");
  const auto d = shiu_bound_check(delta, 1, 3, 10000, table());
  CHECK((d.lhs == 0.0 || d.lhs == 1.0));

  const MF two_omega(Mode::general, [](std::int64_t, int) { return cplx{2.0, 0.0}; }, false, "2^omega");
  const auto s = shiu_bound_check(two_omega, 1, 5, 100000, table());
  CHECK(s.ratio >= 0.1);
  CHECK(s.ratio <= 10.0);
  CHECK(s.ratio == doctest::Approx(s.lhs / s.rhs_shape));
}

TEST_CASE("truncated decay") {
  const MF none(Mode::general, [](std::int64_t, int) { return cplx{}; }, true, "none");
  CHECK(truncated_decay_check(none, 2048, 1'000'000, 1.5, 1, 2, table()).lhs == 0.0);

  const MF smooth(Mode::general, [](std::int64_t p, int) { return p <= 10 ? cplx{1.0, 0.0} : cplx{}; }, true,
                  "smooth10");
  std::int64_t count = 0;
  for (std::int64_t a = 1; a <= 1'000'000; a *= 3)
    for (std::int64_t b = a; b <= 1'000'000; b *= 5)
      for (std::int64_t c = b; c <= 1'000'000; c *= 7)
        if (c > 2048) ++count;
  const auto r = truncated_decay_check(smooth, 2048, 1'000'000, 10.0, 1, 2, table());
  CHECK(r.lhs == static_cast<double>(count));

  double prev = std::numeric_limits<double>::infinity();
  for (std::int64_t w : {2048, 5000, 20000, 100000, 500000}) {
    const auto q = truncated_decay_check(smooth, w, 1'000'000, 10.0, 1, 2, table());
    CHECK(q.rhs_shape <= prev);
    prev = q.rhs_shape;
  }
  CHECK_THROWS_AS(truncated_decay_check(smooth, 1000, 1'000'000, 10.0, 1, 2, table()), DomainError);
}

TEST_CASE("exponential tail") {
  const MF e(Mode::exponentially, [](std::int64_t p, int) { return p <= 50 ? cplx{0.5, 0.0} : cplx{}; }, true, "e");
  const auto r = exponential_tail_check(e, 1000, 100000, 50.0, 1, 3, table());
  double ref = 0.0;
  const auto v = batch_evaluate(e, 100000, table());
  for (std::int64_t n = 1001; n <= 100000; ++n)
    if (n % 3 == 1) ref += v[static_cast<std::size_t>(n)].real();
  CHECK(r.lhs == doctest::Approx(ref).epsilon(1e-12));
  CHECK(r.rhs_shape > 0.0);
  CHECK_THROWS_AS(exponential_tail_check(mobius(), 1000, 100000, 50.0, 1, 3, table()), DomainError);
}

TEST_CASE("logarithmic mean report") {
  const auto g = random_sign(17);
  const auto rep = logarithmic_mean_check(g, 5000, 1.0, table());
  const auto v = batch_evaluate(g, 5000, table());
  CHECK(rep.lhs == doctest::Approx(std::abs(partial_sum_N(v, 5000))).epsilon(1e-12));
  CHECK(rep.integral_term >= 0.0);
  CHECK(rep.short_term >= 0.0);
  CHECK(rep.e0 >= 0.0);
  CHECK(std::isfinite(rep.ratio));
  CHECK_THROWS_AS(logarithmic_mean_check(mobius(), 5000, 1.0, table()), DomainError);
}

TEST_CASE("L2 mean square") {
  const auto f = batch_evaluate(random_unitdisc(23), 3000, table());
  const CharacterGroup g(11);
  const std::vector<std::size_t> J{0};
  const auto r = l2_mean_square(f, g, J, 3000, 1e6, 0.1);
  double direct = 0.0;
  for (const auto& chi : g.characters()) {
    if (chi.index() == 0) continue;
    cplx s{};
    double best = 0.0;
    for (std::int64_t n = 1; n <= 3000; ++n) {
      s += f[static_cast<std::size_t>(n)] * chi(n);
      if (n >= 2) best = std::max(best, std::norm(s));
    }
    direct += best;
  }
  CHECK(r.lhs == doctest::Approx(direct).epsilon(1e-10));
  CHECK(r.ratio == doctest::Approx(r.lhs / r.rhs));
  // the residue form is the I5 identity at y = t
  double at_t = 0.0;
  for (const auto& chi : g.characters())
    if (chi.index() != 0) at_t += std::norm(character_sum(f, chi, 3000));
  CHECK(r.residue_form == doctest::Approx(at_t).epsilon(1e-9));
}

}

#include <doctest.h>

#include <bit>
#include <cmath>
#include <complex>
#include <vector>

#include "nt/arith.hpp"
#include "nt/dirichlet.hpp"
#include "nt/error.hpp"
#include "nt/multfun.hpp"
#include "oracle.hpp"

using namespace nt;

namespace {

const PrimeTable& table() {
  static const auto t = build_prime_table(20000);
  return t;
}

// (a * b)(n) by enumerating divisors of n.
cplx convolve_at(const std::vector<cplx>& a, const std::vector<cplx>& b, std::int64_t n) {
  cplx s{};
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d) continue;
    s += a[static_cast<std::size_t>(d)] * b[static_cast<std::size_t>(n / d)];
    if (d * d != n) s += a[static_cast<std::size_t>(n / d)] * b[static_cast<std::size_t>(d)];
  }
  return s;
}

}  // namespace

TEST_SUITE("multfun") {

TEST_CASE("evaluate examples") {
  CHECK(evaluate(mobius(), 30, table()) == cplx{-1.0, 0.0});
  CHECK(evaluate(one(), 360, table()) == cplx{1.0, 0.0});
  const MF e(Mode::exponentially, [](std::int64_t p, int) { return p == 2 ? cplx{1.0, 0.0} : cplx{0.5, 0.0}; });
  CHECK(std::abs(evaluate(e, 8, table()) - 1.0 / 6.0) < 1e-15);
}

TEST_CASE("batch_evaluate examples") {
  const auto mu = batch_evaluate(mobius(), 10, table());
  const auto av = arith_values(build_prime_table(10));
  for (std::size_t n = 1; n <= 10; ++n) CHECK(mu[n] == cplx{static_cast<double>(av.mobius[n]), 0.0});
  const auto ones = batch_evaluate(one(), 5, table());
  REQUIRE(ones.size() == 6);
  for (std::size_t n = 1; n <= 5; ++n) CHECK(ones[n] == cplx{1.0, 0.0});
}

TEST_CASE("batch_evaluate is bit-identical to evaluate") {
  for (const auto& g : {random_unitdisc(3), random_sign(4), random_unit_interval(5), mobius_tail(7)}) {
    const auto v = batch_evaluate(g, 5000, table());
    for (std::int64_t n = 1; n <= 5000; ++n) {
      const auto e = evaluate(g, n, table());
      CHECK(v[static_cast<std::size_t>(n)].real() == e.real());
      CHECK(v[static_cast<std::size_t>(n)].imag() == e.imag());
    }
  }
}

TEST_CASE("values are multiplicative") {
  const auto g = random_unitdisc(11);
  const auto v = batch_evaluate(g, 3000, table());
  for (std::int64_t m = 1; m <= 50; ++m)
    for (std::int64_t n = 1; m * n <= 3000; ++n)
      if (std::gcd(m, n) == 1)
        CHECK(std::abs(v[static_cast<std::size_t>(m * n)] -
                       v[static_cast<std::size_t>(m)] * v[static_cast<std::size_t>(n)]) < 1e-14);
}

TEST_CASE("modes") {
  const auto g = random_sign(9);
  for (std::int64_t p : {2, 3, 101})
    for (int k = 1; k <= 6; ++k)
      CHECK(g.at_prime_power(p, k) == std::pow(g.at_prime(p), k));

  const MF e(Mode::exponentially, [](std::int64_t p, int) { return cplx{1.0 / static_cast<double>(p), 0.0}; });
  for (int k = 1; k <= 20; ++k) {
    const cplx lhs = e.at_prime_power(3, k) * factorial(k);
    long double rhs = 1.0L;
    for (int j = 0; j < k; ++j) rhs *= static_cast<long double>(e.at_prime(3).real());
    // half an ulp per rounding: squarings and products in the power, then / k!, * k!
    const int roundings = 2 * static_cast<int>(std::bit_width(static_cast<unsigned>(k))) + 2;
    CHECK(lhs.imag() == 0.0);
    CHECK(std::abs(static_cast<long double>(lhs.real()) - rhs) <= roundings * 0x1.0p-53L * rhs);
  }
  CHECK(factorial(0) == 1.0);
  CHECK(factorial(10) == 3628800.0);
  CHECK_THROWS_AS(factorial(171), DomainError);
}

TEST_CASE("unit-disc contract") {
  const MF bad(Mode::general, [](std::int64_t, int) { return cplx{2.0, 0.0}; }, true, "bad");
  CHECK_THROWS_AS(bad.at_prime(3), ContractError);
  const MF loose(Mode::general, [](std::int64_t, int) { return cplx{2.0, 0.0}; }, false, "free");
  CHECK(loose.at_prime(3) == cplx{2.0, 0.0});
}

TEST_CASE("twist") {
  const CharacterGroup g1(1);
  const auto g = random_unitdisc(21);
  const auto same = twist(g, g1.principal(), 0.0);
  for (std::int64_t n = 1; n <= 200; ++n) CHECK(evaluate(same, n, table()) == evaluate(g, n, table()));

  const CharacterGroup g7(7);
  const auto chi = g7.character(2);
  const auto tw = twist(mobius(), chi, 0.0);
  for (std::int64_t p : {2, 3, 5, 7, 11, 13}) CHECK(std::abs(tw.at_prime(p) + chi(p)) < 1e-15);

  const auto tt = twist(g, chi, 3.7);
  for (std::int64_t n = 1; n <= 100; ++n) {
    const double ref = std::abs(evaluate(g, n, table())) * std::abs(chi(n));
    CHECK(std::abs(std::abs(evaluate(tt, n, table())) - ref) < 1e-14);
    const cplx expect = evaluate(g, n, table()) * chi(n) *
                        std::polar(1.0, 3.7 * std::log(static_cast<double>(n)));
    CHECK(std::abs(evaluate(tt, n, table()) - expect) < 1e-12);
  }
}

TEST_CASE("head/tail split") {
  const auto big = split_head_tail(mobius(), 1e9, table());
  for (std::int64_t n = 1; n <= 500; ++n) {
    CHECK(evaluate(big.left, n, table()) == cplx{n == 1 ? 1.0 : 0.0, 0.0});
    CHECK(evaluate(big.right, n, table()) == evaluate(mobius(), n, table()));
  }

  const auto two = split_head_tail(mobius(), 2.0, table());
  const auto f = batch_evaluate(two.left, 6, table());
  const auto h = batch_evaluate(two.right, 6, table());
  CHECK(std::abs(convolve_at(f, h, 6) - cplx{1.0, 0.0}) < 1e-15);  // mu(6) = 1

  const auto g = random_unitdisc(33);
  const auto pr = split_head_tail(g, 37.5, table());
  const auto l = batch_evaluate(pr.left, 10000, table());
  const auto r = batch_evaluate(pr.right, 10000, table());
  const auto gv = batch_evaluate(g, 10000, table());
  for (std::int64_t n = 1; n <= 10000; ++n)
    CHECK(std::abs(convolve_at(l, r, n) - gv[static_cast<std::size_t>(n)]) <= 1e-12);
  CHECK(pr.verified_up_to == 10000);
  CHECK(pr.max_error <= 1e-12);
}

TEST_CASE("completely multiplicative split") {
  const auto c = split_completely_multiplicative(random_sign(2), table());
  for (std::int64_t p : {2, 3, 97})
    for (int k = 1; k <= 5; ++k) CHECK(c.right.at_prime_power(p, k) == cplx{});

  const auto mu = split_completely_multiplicative(mobius(), table());
  CHECK(mu.right.at_prime_power(5, 2) == cplx{-1.0, 0.0});

  const auto rnd = split_completely_multiplicative(random_unit_interval(8), table());
  for (const auto p : table().primes().first(200)) {
    CHECK(std::abs(rnd.right.at_prime_power(p, 1)) < 1e-15);
    CHECK(std::abs(rnd.right.at_prime_power(p, 2)) <= 1.0);
  }
  const auto disc = split_completely_multiplicative(random_unitdisc(8), table());
  for (const auto p : table().primes().first(200)) CHECK(std::abs(disc.right.at_prime_power(p, 2)) <= 2.0);
}

TEST_CASE("exponential split") {
  const auto s = split_exponential(one(), table());
  CHECK(std::abs(s.right.at_prime_power(3, 2) - 0.5) < 1e-15);
  CHECK(std::abs(s.right.at_prime_power(3, 1)) < 1e-15);
  CHECK(std::abs(s.left.at_prime_power(3, 3) - 1.0 / 6.0) < 1e-15);

  const auto rnd = split_exponential(random_unit_interval(12), table());
  double worst = 0.0;
  for (const auto p : table().primes().first(300)) {
    CHECK(std::abs(rnd.right.at_prime_power(p, 1)) < 1e-15);
    for (int k = 1; k <= 6; ++k) worst = std::max(worst, std::abs(rnd.right.at_prime_power(p, k)));
  }
  CHECK(worst <= std::exp(1.0));
  CHECK_THROWS_AS(split_exponential(mobius(), table()), DomainError);
}

TEST_CASE("dirichlet_convolve against divisor enumeration") {
  const auto a = batch_evaluate(random_unitdisc(1), 3000, table());
  const auto b = batch_evaluate(random_unitdisc(2), 3000, table());
  const auto c = dirichlet_convolve(a, b);
  for (std::int64_t n = 1; n <= 3000; ++n)
    CHECK(std::abs(c[static_cast<std::size_t>(n)] - convolve_at(a, b, n)) < 1e-11);
  // mu * 1 = [n = 1]
  const auto e = dirichlet_convolve(batch_evaluate(mobius(), 3000, table()), batch_evaluate(one(), 3000, table()));
  for (std::size_t n = 1; n <= 3000; ++n) CHECK(e[n] == cplx{n == 1 ? 1.0 : 0.0, 0.0});
}

TEST_CASE("builtins") {
  CHECK(parse_builtin("mobius-tail(5)").at_prime(5) == cplx{});
  CHECK(parse_builtin("mobius-tail(5)").at_prime(7) == cplx{-1.0, 0.0});
  CHECK(parse_builtin("unit-tail(3)").at_prime_power(5, 3) == cplx{1.0, 0.0});
  CHECK(parse_builtin(" one ").name() == "one");
  CHECK(parse_builtin("random-unitdisc(42)").at_prime(11) == random_unitdisc(42).at_prime(11));
  CHECK(parse_builtin("random-unit-interval(5)").at_prime(13) == random_unit_interval(5).at_prime(13));
  CHECK_THROWS_AS(parse_builtin("zeta"), ConfigError);
  CHECK_THROWS_AS(parse_builtin("mobius-tail"), ConfigError);
  const auto r = random_unit_interval(5);
  for (const auto p : table().primes().first(100)) {
    const auto v = r.at_prime(p);
    CHECK(v.imag() == 0.0);
    CHECK(v.real() >= 0.0);
    CHECK(v.real() < 1.0);
  }
}

}

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "nt/dirichlet.hpp"
#include "nt/error.hpp"
#include "oracle.hpp"

using namespace nt;

namespace {

bool close(cplx a, cplx b, double tol = 1e-12) { return std::abs(a - b) <= tol; }

// Smallest k >= 1 with chi^k principal, from the values alone.
std::int64_t brute_order(const Character& chi) {
  const auto D = chi.group().modulus();
  for (std::int64_t k = 1;; ++k) {
    bool trivial = true;
    for (std::int64_t n = 1; n <= D && trivial; ++n)
      if (std::gcd(n, D) == 1 && !close(std::pow(chi(n), static_cast<double>(k)), 1.0, 1e-9)) trivial = false;
    if (trivial) return k;
  }
}

}  // namespace

TEST_SUITE("dirichlet") {

TEST_CASE("group sizes and orders") {
  const CharacterGroup g4(4);
  CHECK(g4.size() == 2);
  std::vector<std::int64_t> o4;
  for (const auto& c : g4.characters()) o4.push_back(c.order());
  std::sort(o4.begin(), o4.end());
  CHECK(o4 == std::vector<std::int64_t>{1, 2});

  const CharacterGroup g5(5);
  std::vector<std::int64_t> o5;
  for (const auto& c : g5.characters()) o5.push_back(c.order());
  std::sort(o5.begin(), o5.end());
  CHECK(o5 == std::vector<std::int64_t>{1, 2, 4, 4});

  const CharacterGroup g1(1);
  REQUIRE(g1.size() == 1);
  for (std::int64_t n = 1; n <= 20; ++n) CHECK(g1.principal()(n) == cplx{1.0, 0.0});
}

TEST_CASE("values mod 4") {
  const CharacterGroup g(4);
  CHECK(g.principal()(6) == cplx{});
  const auto chi = g.character(1);
  CHECK(!chi.is_principal());
  CHECK(chi(3) == cplx{-1.0, 0.0});
  CHECK(chi.order() == 2);
  CHECK(char_order(g.principal()) == 1);
}

TEST_CASE("generator character mod 5 has order 4") {
  const CharacterGroup g(5);
  bool found = false;
  for (const auto& c : g.characters())
    if (c.order() == 4) {
      found = true;
      CHECK(brute_order(c) == 4);
    }
  CHECK(found);
}

TEST_CASE("principal character first, values at 1") {
  for (std::int64_t D = 1; D <= 40; ++D) {
    const CharacterGroup g(D);
    CHECK(g.character(0).is_principal());
    for (const auto& c : g.characters()) CHECK(c(1) == cplx{1.0, 0.0});
  }
}

TEST_CASE("complete set of characters") {
  // phi(D) distinct completely multiplicative unimodular maps, zero off the
  // reduced classes, is the whole dual group.
  for (std::int64_t D = 2; D <= 60; ++D) {
    const CharacterGroup g(D);
    const auto chars = g.characters();
    REQUIRE(static_cast<std::int64_t>(chars.size()) == oracle::phi(D));
    for (std::size_t i = 0; i < chars.size(); ++i) {
      const auto& chi = chars[i];
      CHECK(chi.index() == i);
      for (std::int64_t a = 0; a < D; ++a) {
        if (std::gcd(a, D) != 1) {
          CHECK(chi(a) == cplx{});
          continue;
        }
        CHECK(std::abs(std::abs(chi(a)) - 1.0) < 1e-14);
        for (std::int64_t b = 1; b < D; ++b)
          CHECK(close(chi(a * b), chi(a) * chi(b)));
      }
      for (std::size_t j = 0; j < i; ++j) {
        bool same = true;
        for (std::int64_t a = 1; a < D && same; ++a)
          if (!close(chi(a), chars[j](a))) same = false;
        CHECK(!same);
      }
      CHECK(chi.order() == brute_order(chi));
    }
  }
}

TEST_CASE("orthogonality") {
  for (std::int64_t D : {3, 8, 12, 15, 21, 24, 35}) {
    const CharacterGroup g(D);
    const double phi = static_cast<double>(g.phi());
    for (const auto& chi : g.characters()) {
      cplx s{};
      for (std::int64_t n = 1; n <= D; ++n) s += chi(n);
      CHECK(close(s, chi.is_principal() ? phi : 0.0, 1e-10));
    }
    for (std::int64_t a = 1; a < D; ++a) {
      if (std::gcd(a, D) != 1) continue;
      cplx s{};
      for (const auto& chi : g.characters()) s += chi(a);
      CHECK(close(s, a == 1 ? phi : 0.0, 1e-10));
    }
  }
}

TEST_CASE("partial character sums") {
  const CharacterGroup g(4);
  CHECK(close(partial_char_sum(g.character(1), 0, 10), 1.0));
  CHECK(close(partial_char_sum(g.principal(), 0, 8), 4.0));
  for (std::int64_t D : {5, 7, 12, 30}) {
    const CharacterGroup h(D);
    for (const auto& chi : h.characters()) {
      if (chi.is_principal()) continue;
      CHECK(close(chi.partial_sum(0, D), 0.0, 1e-10));
      for (std::int64_t u : {0, 3, 17})
        for (std::int64_t v : {u, u + 1, u + 50, u + 333}) {
          cplx ref{};
          for (std::int64_t n = u + 1; n <= v; ++n) ref += chi(n);
          CHECK(close(chi.partial_sum(u, v), ref, 1e-9));
        }
    }
  }
  CHECK_THROWS_AS(partial_char_sum(g.principal(), 5, 2), DomainError);
}

TEST_CASE("conjugate and product") {
  const CharacterGroup g(21);
  const auto chars = g.characters();
  for (const auto& a : chars) {
    CHECK((a * a.conj()).is_principal());
    for (const auto& b : chars) {
      const auto ab = a * b;
      for (std::int64_t n = 1; n < 21; ++n) CHECK(close(ab(n), a(n) * b(n)));
    }
  }
  const CharacterGroup other(5);
  CHECK_THROWS_AS(chars[1] * other.character(1), DomainError);
}

TEST_CASE("discrete log round trip") {
  for (std::int64_t D : {9, 16, 40, 63, 100}) {
    const CharacterGroup g(D);
    for (const auto a : g.reduced_residues()) {
      const auto e = g.discrete_log(a);
      CHECK(g.residue_of(e) == a);
      CHECK(g.character(e).index() < g.size());
    }
    CHECK_THROWS_AS(g.discrete_log(D % 2 == 0 ? 2 : 3), DomainError);
  }
}

TEST_CASE("quarter-turn values are exact") {
  const CharacterGroup g(5);
  for (const auto& chi : g.characters())
    for (std::int64_t n = 1; n < 5; ++n) {
      const auto z = chi(n);
      CHECK((z.real() == 0.0 || std::abs(z.real()) == 1.0));
      CHECK((z.imag() == 0.0 || std::abs(z.imag()) == 1.0));
    }
}

TEST_CASE("modulus guard") {
  CHECK_THROWS_AS(CharacterGroup(0), ResourceError);
  CHECK_THROWS_AS(CharacterGroup(kMaxModulus + 1), ResourceError);
}

}

#include "nt/dirichlet.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

#include "nt/arith.hpp"
#include "nt/error.hpp"

namespace nt {

struct CharacterGroup::Impl {
  std::int64_t D = 1;
  std::int64_t phi = 1;
  std::int64_t M = 1;
  std::vector<Generator> gens;
  std::vector<std::int64_t> reduced;
  std::vector<std::int64_t> dlog;  // D * gens.size(), -1 when not reduced
  std::vector<cplx> roots;         // e(k / M)
};

namespace {

std::int64_t primitive_root_prime_power(std::int64_t p, int e) {
  const std::int64_t pe = static_cast<std::int64_t>(std::llround(std::pow(p, e)));
  const auto factors = prime_divisors(p - 1);
  for (std::int64_t g = 2; g < p; ++g) {
    bool ok = true;
    for (const auto q : factors)
      if (mod_pow(g, (p - 1) / q, p) == 1) {
        ok = false;
        break;
      }
    if (!ok) continue;
    // A root mod p lifts to every p^e unless g^(p-1) = 1 mod p^2.
    if (e >= 2 && mod_pow(g, p - 1, p * p) == 1) g += p;
    return g % pe;
  }
  return 1 % pe;  // p = 2 never reaches here
}

// Element congruent to r mod m and 1 mod D/m (gcd(m, D/m) = 1).
std::int64_t crt_lift(std::int64_t r, std::int64_t m, std::int64_t D) {
  const std::int64_t n = D / m;
  if (n == 1) return ((r % m) + m) % m;
  // x = 1 + n * k with 1 + n k = r (mod m).
  const std::int64_t k = ((r - 1) % m + m) % m * mod_inverse(n % m, m) % m;
  return (1 + n * k) % D;
}

cplx exact_root(std::int64_t k, std::int64_t M) {
  k = ((k % M) + M) % M;
  if ((4 * k) % M == 0) {
    switch ((4 * k) / M) {
      case 0: return {1.0, 0.0};
      case 1: return {0.0, 1.0};
      case 2: return {-1.0, 0.0};
      default: return {0.0, -1.0};
    }
  }
  // Reduce to the nearest representative in (-M/2, M/2] for accuracy.
  const std::int64_t kk = (2 * k > M) ? k - M : k;
  const double a = 2.0 * std::numbers::pi * static_cast<double>(kk) / static_cast<double>(M);
  return {std::cos(a), std::sin(a)};
}

}  // namespace

CharacterGroup::CharacterGroup(std::int64_t D) {
  if (D < 1 || D > kMaxModulus)
    throw ResourceError("modulus out of range [1, 1e6]: " + std::to_string(D));
  auto impl = std::make_shared<Impl>();
  impl->D = D;
  impl->phi = euler_phi(D);
  std::int64_t rest = D;
  for (const auto p : prime_divisors(D)) {
    int e = 0;
    std::int64_t pe = 1;
    while (rest % p == 0) {
      rest /= p;
      ++e;
      pe *= p;
    }
    if (p == 2) {
      if (e >= 2) impl->gens.push_back({crt_lift(pe - 1, pe, D), 2});
      if (e >= 3) impl->gens.push_back({crt_lift(5, pe, D), pe / 4});
    } else {
      impl->gens.push_back({crt_lift(primitive_root_prime_power(p, e), pe, D), pe / p * (p - 1)});
    }
  }
  for (const auto& g : impl->gens) impl->M = std::lcm(impl->M, g.order);

  const std::size_t ng = impl->gens.size();
  impl->dlog.assign(static_cast<std::size_t>(D) * ng, -1);
  // Walk all exponent vectors in mixed radix, multiplying generator powers.
  std::vector<std::int64_t> e(ng, 0);
  for (std::int64_t count = 0; count < impl->phi; ++count) {
    std::int64_t a = 1 % D;
    for (std::size_t i = 0; i < ng; ++i)
      a = static_cast<std::int64_t>(static_cast<__int128>(a) *
                                    mod_pow(impl->gens[i].residue, e[i], D) % D);
    for (std::size_t i = 0; i < ng; ++i) impl->dlog[static_cast<std::size_t>(a) * ng + i] = e[i];
    for (std::size_t i = ng; i-- > 0;) {
      if (++e[i] < impl->gens[i].order) break;
      e[i] = 0;
    }
  }
  for (std::int64_t a = 0; a < D; ++a)
    if (std::gcd(a, D) == 1) impl->reduced.push_back(a);
  if (D == 1) impl->reduced = {0};
  impl->roots.resize(static_cast<std::size_t>(impl->M));
  for (std::int64_t k = 0; k < impl->M; ++k) impl->roots[k] = exact_root(k, impl->M);
  impl_ = std::move(impl);
}

std::int64_t CharacterGroup::modulus() const { return impl_->D; }
std::int64_t CharacterGroup::phi() const { return impl_->phi; }
std::int64_t CharacterGroup::exponent() const { return impl_->M; }
std::span<const Generator> CharacterGroup::generators() const { return impl_->gens; }
std::span<const std::int64_t> CharacterGroup::reduced_residues() const { return impl_->reduced; }

bool CharacterGroup::is_reduced(std::int64_t a) const {
  return std::gcd(((a % impl_->D) + impl_->D) % impl_->D, impl_->D) == 1 || impl_->D == 1;
}

std::span<const std::int64_t> CharacterGroup::discrete_log(std::int64_t a) const {
  const std::int64_t D = impl_->D;
  a = ((a % D) + D) % D;
  if (!is_reduced(a)) throw DomainError("discrete_log of a non-reduced residue");
  const std::size_t ng = impl_->gens.size();
  return std::span<const std::int64_t>(impl_->dlog).subspan(static_cast<std::size_t>(a) * ng, ng);
}

std::int64_t CharacterGroup::residue_of(std::span<const std::int64_t> exps) const {
  const std::int64_t D = impl_->D;
  std::int64_t a = 1 % D;
  for (std::size_t i = 0; i < impl_->gens.size(); ++i)
    a = static_cast<std::int64_t>(static_cast<__int128>(a) *
                                  mod_pow(impl_->gens[i].residue, exps[i], D) % D);
  return a;
}

cplx CharacterGroup::root(std::int64_t k) const {
  const std::int64_t M = impl_->M;
  return impl_->roots[static_cast<std::size_t>(((k % M) + M) % M)];
}

Character CharacterGroup::character(std::size_t index) const {
  if (index >= size()) throw DomainError("character index out of range");
  const std::size_t ng = impl_->gens.size();
  std::vector<std::int64_t> e(ng, 0);
  for (std::size_t i = ng; i-- > 0;) {
    const auto ord = static_cast<std::size_t>(impl_->gens[i].order);
    e[i] = static_cast<std::int64_t>(index % ord);
    index /= ord;
  }
  return Character(*this, std::move(e));
}

Character CharacterGroup::character(std::span<const std::int64_t> exps) const {
  if (exps.size() != impl_->gens.size()) throw DomainError("exponent vector length mismatch");
  std::vector<std::int64_t> e(exps.begin(), exps.end());
  for (std::size_t i = 0; i < e.size(); ++i) {
    const auto ord = impl_->gens[i].order;
    e[i] = ((e[i] % ord) + ord) % ord;
  }
  return Character(*this, std::move(e));
}

Character CharacterGroup::principal() const { return character(std::size_t{0}); }

std::vector<Character> CharacterGroup::characters() const {
  std::vector<Character> out;
  out.reserve(size());
  for (std::size_t i = 0; i < size(); ++i) out.push_back(character(i));
  return out;
}

Character::Character(CharacterGroup g, std::vector<std::int64_t> exps)
    : group_(std::move(g)), exps_(std::move(exps)) {
  const auto& impl = *group_.impl_;
  const std::size_t ng = impl.gens.size();
  index_ = 0;
  order_ = 1;
  std::vector<std::int64_t> weight(ng);
  for (std::size_t i = 0; i < ng; ++i) {
    const auto ord = impl.gens[i].order;
    index_ = index_ * static_cast<std::size_t>(ord) + static_cast<std::size_t>(exps_[i]);
    order_ = std::lcm(order_, ord / std::gcd(exps_[i], ord));
    weight[i] = exps_[i] * (impl.M / ord);
  }
  angles_.assign(static_cast<std::size_t>(impl.D), -1);
  for (const auto a : impl.reduced) {
    std::int64_t k = 0;
    for (std::size_t i = 0; i < ng; ++i)
      k = (k + weight[i] * impl.dlog[static_cast<std::size_t>(a) * ng + i]) % impl.M;
    angles_[static_cast<std::size_t>(a)] = static_cast<std::int32_t>(k);
  }
}

std::int64_t Character::angle(std::int64_t n) const {
  const std::int64_t D = group_.modulus();
  return angles_[static_cast<std::size_t>(((n % D) + D) % D)];
}

cplx Character::operator()(std::int64_t n) const {
  const std::int64_t k = angle(n);
  return k < 0 ? cplx{0.0, 0.0} : group_.impl_->roots[static_cast<std::size_t>(k)];
}

Character Character::conj() const {
  std::vector<std::int64_t> e(exps_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = -exps_[i];
  return group_.character(e);
}

Character Character::operator*(const Character& o) const {
  if (!(group_ == o.group_))
    throw DomainError("product of characters with different moduli");
  std::vector<std::int64_t> e(exps_.size());
  for (std::size_t i = 0; i < e.size(); ++i) e[i] = exps_[i] + o.exps_[i];
  return group_.character(e);
}

cplx Character::partial_sum(std::int64_t u, std::int64_t v) const {
  if (u < 0 || v < u) throw DomainError("partial_sum requires 0 <= u <= v");
  const std::int64_t D = group_.modulus();
  // Full periods contribute phi(D) for the principal character, else 0.
  const std::int64_t periods = (v - u) / D;
  cplx s = is_principal() ? cplx(static_cast<double>(periods * group_.phi()), 0.0) : cplx{};
  for (std::int64_t n = u + periods * D + 1; n <= v; ++n) s += (*this)(n);
  return s;
}

CharacterGroup build_character_group(std::int64_t D) { return CharacterGroup(D); }

cplx partial_char_sum(const Character& chi, std::int64_t u, std::int64_t v) {
  return chi.partial_sum(u, v);
}

}  // namespace nt

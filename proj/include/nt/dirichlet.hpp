#pragma once

#include <complex>
#include <cstdint>
#include <memory>
#include <span>
#include <vector>

namespace nt {

using cplx = std::complex<double>;

inline constexpr std::int64_t kMaxModulus = 1'000'000;

struct Generator {
  std::int64_t residue;  // generator of one cyclic factor, lifted mod D by CRT
  std::int64_t order;
};

class Character;

// The group of Dirichlet characters mod D. Cheap to copy (shared immutable state).
class CharacterGroup {
 public:
  explicit CharacterGroup(std::int64_t D);

  std::int64_t modulus() const;
  std::int64_t phi() const;
  // lcm of the generator orders; every character value is e(k / exponent()).
  std::int64_t exponent() const;
  std::span<const Generator> generators() const;
  // Reduced residues in ascending order (just {0} for D = 1).
  std::span<const std::int64_t> reduced_residues() const;

  bool is_reduced(std::int64_t a) const;
  // Exponent vector of a reduced residue a; throws for non-reduced a.
  std::span<const std::int64_t> discrete_log(std::int64_t a) const;
  // Rebuild a mod D from an exponent vector.
  std::int64_t residue_of(std::span<const std::int64_t> exps) const;

  // e(k / exponent()), exact at quarter turns.
  cplx root(std::int64_t k) const;

  std::size_t size() const { return static_cast<std::size_t>(phi()); }
  Character character(std::size_t index) const;
  Character character(std::span<const std::int64_t> exps) const;
  Character principal() const;
  std::vector<Character> characters() const;

  // Same modulus means the same group and the same enumeration.
  bool operator==(const CharacterGroup& o) const { return impl_ == o.impl_ || modulus() == o.modulus(); }

 private:
  struct Impl;
  std::shared_ptr<const Impl> impl_;
  friend class Character;
};

class Character {
 public:
  const CharacterGroup& group() const { return group_; }
  std::span<const std::int64_t> exponents() const { return exps_; }
  // Lexicographic index in the group's enumeration; principal is 0.
  std::size_t index() const { return index_; }

  // Angle numerator k with chi(n) = e(k / exponent), or -1 when (n, D) > 1.
  std::int64_t angle(std::int64_t n) const;
  cplx operator()(std::int64_t n) const;

  std::int64_t order() const { return order_; }
  bool is_principal() const { return order_ == 1; }
  bool is_real() const { return order_ <= 2; }

  Character conj() const;
  Character operator*(const Character& o) const;
  bool operator==(const Character& o) const {
    return group_ == o.group_ && index_ == o.index_;
  }

  // Sum of chi(n) over u < n <= v.
  cplx partial_sum(std::int64_t u, std::int64_t v) const;

 private:
  Character(CharacterGroup g, std::vector<std::int64_t> exps);
  CharacterGroup group_;
  std::vector<std::int64_t> exps_;
  std::vector<std::int32_t> angles_;  // per residue mod D
  std::size_t index_ = 0;
  std::int64_t order_ = 1;
  friend class CharacterGroup;
};

CharacterGroup build_character_group(std::int64_t D);
inline cplx char_value(const Character& chi, std::int64_t n) { return chi(n); }
inline std::int64_t char_order(const Character& chi) { return chi.order(); }
cplx partial_char_sum(const Character& chi, std::int64_t u, std::int64_t v);

}  // namespace nt

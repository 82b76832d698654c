#pragma once

// Exact arithmetic in F_p and F_{p^k} (k <= 4).
//
// Elements are addressed by a canonical index in [0, q): the base-p digits of
// the index are the coefficients c0, c1, ... of the polynomial representative
// modulo the field's defining polynomial.  Index 0 is zero and index 1 is one.
// Hot loops work on raw indices through Field; FieldElement is the value type
// for everything else.

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mql/error.hpp"

namespace mql {

using Index = std::uint64_t;

namespace detail {

struct FieldData {
  std::uint64_t p = 0;
  int k = 1;
  std::uint64_t q = 0;
  std::vector<std::uint64_t> modulus;  // monic, c0..ck; empty when k == 1
  std::vector<std::uint64_t> place;    // p^i, i = 0..k
  Index generator = 1;                 // generator of the multiplicative group
  std::vector<std::uint32_t> log;      // only for k > 1 and q <= table cap
  std::vector<std::uint32_t> exp;
};

Index slow_mul(const FieldData& d, Index a, Index b);

}  // namespace detail

class FieldElement;

class Field {
 public:
  static constexpr std::uint64_t kTableCap = std::uint64_t{1} << 20;
  static constexpr Index kZero = 0;
  static constexpr Index kOne = 1;

  std::uint64_t characteristic() const noexcept { return d_->p; }
  int degree() const noexcept { return d_->k; }
  std::uint64_t order() const noexcept { return d_->q; }
  bool is_prime_field() const noexcept { return d_->k == 1; }
  // Monic defining polynomial, coefficients c0..ck; empty for prime fields.
  const std::vector<std::uint64_t>& modulus() const noexcept { return d_->modulus; }
  Index generator() const noexcept { return d_->generator; }

  Index add(Index a, Index b) const noexcept {
    const std::uint64_t p = d_->p;
    if (d_->k == 1) {
      const Index s = a + b;
      return s >= p ? s - p : s;
    }
    Index r = 0;
    for (int i = 0; i < d_->k; ++i) {
      std::uint64_t s = a % p + b % p;
      if (s >= p) s -= p;
      r += s * d_->place[i];
      a /= p;
      b /= p;
    }
    return r;
  }

  Index neg(Index a) const noexcept {
    const std::uint64_t p = d_->p;
    if (d_->k == 1) return a == 0 ? 0 : p - a;
    Index r = 0;
    for (int i = 0; i < d_->k; ++i) {
      const std::uint64_t c = a % p;
      r += (c == 0 ? 0 : p - c) * d_->place[i];
      a /= p;
    }
    return r;
  }

  Index sub(Index a, Index b) const noexcept { return add(a, neg(b)); }

  Index mul(Index a, Index b) const noexcept {
    if (d_->k == 1) return (a * b) % d_->p;
    if (a == 0 || b == 0) return 0;
    if (!d_->exp.empty()) {
      std::uint64_t e = std::uint64_t{d_->log[a]} + d_->log[b];
      if (e >= d_->q - 1) e -= d_->q - 1;
      return d_->exp[e];
    }
    return detail::slow_mul(*d_, a, b);
  }

  Index pow(Index a, std::uint64_t e) const noexcept;
  // Inverse by exponentiation with q - 2; throws kInvalidArgument on zero.
  Index inv(Index a) const;
  Index div(Index a, Index b) const { return mul(a, inv(b)); }

  // Integer reduced into the prime subfield.
  Index from_int(long long v) const noexcept;
  std::vector<std::uint64_t> coefficients(Index a) const;
  Index from_coefficients(std::span<const std::uint64_t> coeffs) const;
  std::uint64_t multiplicative_order(Index a) const;

  FieldElement element(long long v) const;
  FieldElement at(Index a) const;
  FieldElement zero() const;
  FieldElement one() const;

  // Decimal integer for prime fields, comma-separated c0,c1,... otherwise.
  std::string format(Index a) const;
  std::string name() const;

  friend bool operator==(const Field& a, const Field& b) noexcept;

 private:
  explicit Field(std::shared_ptr<const detail::FieldData> d) : d_(std::move(d)) {}
  friend Field make_field(std::uint64_t p, int k);

  std::shared_ptr<const detail::FieldData> d_;
};

bool is_prime(std::uint64_t n) noexcept;

// Deterministic: the defining polynomial is the lexicographically smallest
// (over c0, c1, ..., c_{k-1}) monic irreducible of degree k.
Field make_field(std::uint64_t p, int k = 1);

class FieldElement {
 public:
  FieldElement(Field field, Index value);

  const Field& field() const noexcept { return field_; }
  Index index() const noexcept { return value_; }
  bool is_zero() const noexcept { return value_ == 0; }
  std::vector<std::uint64_t> coefficients() const { return field_.coefficients(value_); }

  FieldElement inverse() const { return {field_, field_.inv(value_)}; }
  FieldElement pow(std::uint64_t e) const { return {field_, field_.pow(value_, e)}; }
  std::string to_string() const { return field_.format(value_); }

  FieldElement operator-() const { return {field_, field_.neg(value_)}; }
  FieldElement& operator+=(const FieldElement& o);
  FieldElement& operator-=(const FieldElement& o);
  FieldElement& operator*=(const FieldElement& o);
  FieldElement& operator/=(const FieldElement& o);

  friend FieldElement operator+(FieldElement a, const FieldElement& b) { return a += b; }
  friend FieldElement operator-(FieldElement a, const FieldElement& b) { return a -= b; }
  friend FieldElement operator*(FieldElement a, const FieldElement& b) { return a *= b; }
  friend FieldElement operator/(FieldElement a, const FieldElement& b) { return a /= b; }
  friend bool operator==(const FieldElement& a, const FieldElement& b) noexcept {
    return a.value_ == b.value_ && a.field_ == b.field_;
  }

 private:
  void require_same_field(const FieldElement& o) const;

  Field field_;
  Index value_;
};

// All solutions of x^n = 1, sorted by index; gcd(n, q-1) of them.
std::vector<FieldElement> nth_roots_of_unity(const Field& field, std::uint64_t n);

// g^((q-1)/n) for the field's generator g, when n | q-1.
std::optional<FieldElement> primitive_root_of_unity(const Field& field, std::uint64_t n);

using PowerTable = std::vector<Index>;

// table[x] = x^e for every index x; throws kTableTooLarge above 2^20 elements.
PowerTable power_table(const Field& field, std::uint64_t e);

}  // namespace mql

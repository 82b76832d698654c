#pragma once

// Sparse multivariate polynomials over an exact coefficient ring.
//
// MPoly<Ring> keeps its terms merged, nonzero and sorted in descending
// graded-lexicographic order, so structural equality is polynomial equality.
// Two rings are provided: IntegerCoeffs (checked 64-bit integers, used for the
// family templates) and FieldCoeffs (indices into one finite field).

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mql/error.hpp"
#include "mql/ffield.hpp"

namespace mql {

using Monomial = std::vector<std::uint32_t>;

inline std::uint32_t total_degree(const Monomial& m) {
  return std::accumulate(m.begin(), m.end(), std::uint32_t{0});
}

// Descending graded-lexicographic order: true when a sorts before b.
inline bool grlex_before(const Monomial& a, const Monomial& b) {
  const auto da = total_degree(a);
  const auto db = total_degree(b);
  if (da != db) return da > db;
  return a > b;
}

struct IntegerCoeffs {
  using value_type = long long;

  value_type zero() const noexcept { return 0; }
  value_type one() const noexcept { return 1; }
  value_type from_int(long long v) const noexcept { return v; }
  bool is_zero(value_type v) const noexcept { return v == 0; }
  value_type neg(value_type a) const { return sub(0, a); }
  value_type add(value_type a, value_type b) const {
    value_type r;
    if (__builtin_add_overflow(a, b, &r)) throw Error(ErrorCode::kOverflow, "integer coefficient addition");
    return r;
  }
  value_type sub(value_type a, value_type b) const {
    value_type r;
    if (__builtin_sub_overflow(a, b, &r)) throw Error(ErrorCode::kOverflow, "integer coefficient subtraction");
    return r;
  }
  value_type mul(value_type a, value_type b) const {
    value_type r;
    if (__builtin_mul_overflow(a, b, &r)) throw Error(ErrorCode::kOverflow, "integer coefficient product");
    return r;
  }
  std::string format(value_type v) const { return std::to_string(v); }

  friend bool operator==(const IntegerCoeffs&, const IntegerCoeffs&) noexcept { return true; }
};

struct FieldCoeffs {
  using value_type = Index;

  Field field;

  value_type zero() const noexcept { return Field::kZero; }
  value_type one() const noexcept { return Field::kOne; }
  value_type from_int(long long v) const noexcept { return field.from_int(v); }
  bool is_zero(value_type v) const noexcept { return v == Field::kZero; }
  value_type neg(value_type a) const noexcept { return field.neg(a); }
  value_type add(value_type a, value_type b) const noexcept { return field.add(a, b); }
  value_type sub(value_type a, value_type b) const noexcept { return field.sub(a, b); }
  value_type mul(value_type a, value_type b) const noexcept { return field.mul(a, b); }
  std::string format(value_type v) const { return field.format(v); }

  friend bool operator==(const FieldCoeffs& a, const FieldCoeffs& b) noexcept { return a.field == b.field; }
};

template <class Ring>
class MPoly {
 public:
  using Coeff = typename Ring::value_type;

  struct Term {
    Monomial exponents;
    Coeff coeff;
    friend bool operator==(const Term&, const Term&) = default;
  };

  MPoly(Ring ring, std::size_t nvars) : ring_(std::move(ring)), nvars_(nvars) {}

  MPoly(Ring ring, std::size_t nvars, std::vector<Term> terms) : ring_(std::move(ring)), nvars_(nvars) {
    for (const auto& t : terms) {
      if (t.exponents.size() != nvars_) throw Error(ErrorCode::kDimensionMismatch, "monomial length");
    }
    terms_ = std::move(terms);
    canonicalize();
  }

  static MPoly constant(Ring ring, std::size_t nvars, Coeff c) {
    return MPoly(ring, nvars, {Term{Monomial(nvars, 0), c}});
  }

  static MPoly variable(Ring ring, std::size_t nvars, std::size_t i) {
    if (i >= nvars) throw Error(ErrorCode::kDimensionMismatch, "variable index");
    Monomial m(nvars, 0);
    m[i] = 1;
    const Coeff one = ring.one();
    return MPoly(std::move(ring), nvars, {Term{std::move(m), one}});
  }

  const Ring& ring() const noexcept { return ring_; }
  std::size_t nvars() const noexcept { return nvars_; }
  const std::vector<Term>& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }

  std::uint32_t degree() const {
    std::uint32_t d = 0;
    for (const auto& t : terms_) d = std::max(d, total_degree(t.exponents));
    return d;
  }

  bool is_homogeneous() const {
    if (terms_.empty()) return true;
    const auto d = total_degree(terms_.front().exponents);
    return std::all_of(terms_.begin(), terms_.end(),
                       [d](const Term& t) { return total_degree(t.exponents) == d; });
  }

  MPoly scaled(Coeff c) const {
    std::vector<Term> out;
    out.reserve(terms_.size());
    for (const auto& t : terms_) out.push_back({t.exponents, ring_.mul(t.coeff, c)});
    return MPoly(ring_, nvars_, std::move(out));
  }

  MPoly operator-() const { return scaled(ring_.neg(ring_.one())); }

  friend MPoly operator+(const MPoly& a, const MPoly& b) {
    a.require_compatible(b);
    std::vector<Term> all = a.terms_;
    all.insert(all.end(), b.terms_.begin(), b.terms_.end());
    return MPoly(a.ring_, a.nvars_, std::move(all));
  }

  friend MPoly operator-(const MPoly& a, const MPoly& b) { return a + (-b); }

  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    a.require_compatible(b);
    std::map<Monomial, Coeff> acc;
    for (const auto& ta : a.terms_) {
      for (const auto& tb : b.terms_) {
        Monomial m(a.nvars_);
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = ta.exponents[i] + tb.exponents[i];
        const Coeff c = a.ring_.mul(ta.coeff, tb.coeff);
        auto [it, inserted] = acc.try_emplace(std::move(m), c);
        if (!inserted) it->second = a.ring_.add(it->second, c);
      }
    }
    std::vector<Term> out;
    out.reserve(acc.size());
    for (auto& [m, c] : acc) out.push_back({m, c});
    return MPoly(a.ring_, a.nvars_, std::move(out));
  }

  MPoly pow(unsigned e) const {
    MPoly result = constant(ring_, nvars_, ring_.one());
    MPoly base = *this;
    while (e > 0) {
      if (e & 1u) result = result * base;
      e >>= 1u;
      if (e > 0) base = base * base;
    }
    return result;
  }

  friend bool operator==(const MPoly& a, const MPoly& b) {
    return a.nvars_ == b.nvars_ && a.ring_ == b.ring_ && a.terms_ == b.terms_;
  }

  void require_compatible(const MPoly& o) const {
    if (nvars_ != o.nvars_) throw Error(ErrorCode::kDimensionMismatch, "variable counts differ");
    if (!(ring_ == o.ring_)) throw Error(ErrorCode::kFieldMismatch, "coefficient domains differ");
  }

 private:
  void canonicalize() {
    std::sort(terms_.begin(), terms_.end(),
              [](const Term& a, const Term& b) { return grlex_before(a.exponents, b.exponents); });
    std::vector<Term> merged;
    merged.reserve(terms_.size());
    for (auto& t : terms_) {
      if (!merged.empty() && merged.back().exponents == t.exponents) {
        merged.back().coeff = ring_.add(merged.back().coeff, t.coeff);
      } else {
        merged.push_back(std::move(t));
      }
    }
    std::erase_if(merged, [this](const Term& t) { return ring_.is_zero(t.coeff); });
    terms_ = std::move(merged);
  }

  Ring ring_;
  std::size_t nvars_;
  std::vector<Term> terms_;
};

using IntPoly = MPoly<IntegerCoeffs>;
using FieldPoly = MPoly<FieldCoeffs>;

template <class Ring>
bool poly_equal(const MPoly<Ring>& f, const MPoly<Ring>& g) {
  f.require_compatible(g);
  return f == g;
}

template <class Ring>
MPoly<Ring> derivative(const MPoly<Ring>& f, std::size_t var) {
  if (var >= f.nvars()) throw Error(ErrorCode::kDimensionMismatch, "derivative variable index");
  using Term = typename MPoly<Ring>::Term;
  std::vector<Term> out;
  for (const auto& t : f.terms()) {
    const auto e = t.exponents[var];
    if (e == 0) continue;
    Term d{t.exponents, f.ring().mul(t.coeff, f.ring().from_int(e))};
    d.exponents[var] = e - 1;
    out.push_back(std::move(d));
  }
  return MPoly<Ring>(f.ring(), f.nvars(), std::move(out));
}

// f(images[0], ..., images[n-1]), fully expanded.
template <class Ring>
MPoly<Ring> substitute(const MPoly<Ring>& f, std::span<const MPoly<Ring>> images) {
  if (images.size() != f.nvars()) throw Error(ErrorCode::kDimensionMismatch, "substitution arity");
  if (images.empty()) return f;
  const std::size_t target_vars = images.front().nvars();
  for (const auto& g : images) {
    if (g.nvars() != target_vars) throw Error(ErrorCode::kDimensionMismatch, "substitution images");
    if (!(g.ring() == f.ring())) throw Error(ErrorCode::kFieldMismatch, "substitution images");
  }
  // powers[i][e] = images[i]^e, filled on demand.
  std::vector<std::vector<MPoly<Ring>>> powers(images.size());
  auto power = [&](std::size_t i, std::uint32_t e) -> const MPoly<Ring>& {
    auto& cache = powers[i];
    if (cache.empty()) cache.push_back(MPoly<Ring>::constant(f.ring(), target_vars, f.ring().one()));
    while (cache.size() <= e) cache.push_back(cache.back() * images[i]);
    return cache[e];
  };
  MPoly<Ring> result(f.ring(), target_vars);
  for (const auto& t : f.terms()) {
    MPoly<Ring> term = MPoly<Ring>::constant(f.ring(), target_vars, t.coeff);
    for (std::size_t i = 0; i < images.size(); ++i) {
      if (t.exponents[i] != 0) term = term * power(i, t.exponents[i]);
    }
    result = result + term;
  }
  return result;
}

template <class Ring>
typename Ring::value_type eval(const MPoly<Ring>& f, std::span<const typename Ring::value_type> point) {
  if (point.size() != f.nvars()) throw Error(ErrorCode::kDimensionMismatch, "evaluation point length");
  const Ring& r = f.ring();
  auto acc = r.zero();
  for (const auto& t : f.terms()) {
    auto v = t.coeff;
    for (std::size_t i = 0; i < point.size(); ++i) {
      for (std::uint32_t e = 0; e < t.exponents[i]; ++e) v = r.mul(v, point[i]);
    }
    acc = r.add(acc, v);
  }
  return acc;
}

// Returns c with f = c * g when such a nonzero c exists.
template <class Ring>
std::optional<typename Ring::value_type> proportionality(const MPoly<Ring>& f, const MPoly<Ring>& g);

template <>
inline std::optional<Index> proportionality(const FieldPoly& f, const FieldPoly& g) {
  f.require_compatible(g);
  if (f.terms().size() != g.terms().size() || f.is_zero()) return std::nullopt;
  const Field& F = f.ring().field;
  const Index c = F.div(f.terms().front().coeff, g.terms().front().coeff);
  if (poly_equal(g.scaled(c), f)) return c;
  return std::nullopt;
}

template <class Ring>
std::string to_string(const MPoly<Ring>& f) {
  if (f.is_zero()) return "0";
  std::string out;
  for (const auto& t : f.terms()) {
    if (!out.empty()) out += " + ";
    out += f.ring().format(t.coeff);
    for (std::size_t i = 0; i < t.exponents.size(); ++i) {
      if (t.exponents[i] == 0) continue;
      out += "*x" + std::to_string(i);
      if (t.exponents[i] > 1) out += "^" + std::to_string(t.exponents[i]);
    }
  }
  return out;
}

// Reduce integer coefficients into F.
FieldPoly reduce(const IntPoly& f, const Field& field);

// Partially evaluate a template whose trailing variables are parameters:
// variables [0, keep) stay symbolic, the remaining ones take `params`.
FieldPoly specialize(const IntPoly& tmpl, std::size_t keep, std::span<const FieldElement> params);

FieldElement eval(const FieldPoly& f, std::span<const FieldElement> point);
FieldElement eval(const IntPoly& f, std::span<const FieldElement> point);

template <class Ring>
struct PolySystem {
  std::size_t nvars = 0;
  std::vector<MPoly<Ring>> polys;
  bool homogeneous = false;

  PolySystem(std::size_t n, std::vector<MPoly<Ring>> ps, bool require_homogeneous)
      : nvars(n), polys(std::move(ps)), homogeneous(require_homogeneous) {
    for (const auto& f : polys) {
      if (f.nvars() != nvars) throw Error(ErrorCode::kDimensionMismatch, "system member variable count");
      if (!(f.ring() == polys.front().ring())) throw Error(ErrorCode::kFieldMismatch, "system coefficient domain");
      if (homogeneous && !f.is_homogeneous())
        throw Error(ErrorCode::kInvalidArgument, "system flagged homogeneous contains " + to_string(f));
    }
  }
};

using FieldSystem = PolySystem<FieldCoeffs>;

}  // namespace mql

#include <random>

#include "doctest.h"
#include "mql/families.hpp"

using namespace mql;

namespace {

FieldPoly var(const Field& f, std::size_t n, std::size_t i) { return FieldPoly::variable(FieldCoeffs{f}, n, i); }

FieldPoly random_poly(const Field& f, std::size_t n, std::mt19937_64& rng, unsigned max_deg = 4, int terms = 4) {
  std::uniform_int_distribution<Index> c(0, f.order() - 1);
  std::vector<FieldPoly::Term> out;
  for (int t = 0; t < terms; ++t) {
    Monomial m(n, 0);
    for (auto& e : m) e = static_cast<std::uint32_t>(rng() % (max_deg + 1));
    out.push_back({m, c(rng)});
  }
  return FieldPoly(FieldCoeffs{f}, n, out);
}

std::vector<Index> random_point(const Field& f, std::size_t n, std::mt19937_64& rng) {
  std::uniform_int_distribution<Index> c(0, f.order() - 1);
  std::vector<Index> x(n);
  for (auto& v : x) v = c(rng);
  return x;
}

}  // namespace

TEST_CASE("evaluation examples") {
  const Field f2 = make_field(2);
  CHECK(eval(var(f2, 2, 0) + var(f2, 2, 1), std::span<const Index>(std::vector<Index>{1, 1})) == 0);
  const auto ones = std::vector<Index>{1, 1, 1, 1, 1};
  const Field f11 = make_field(11);
  CHECK(eval(quintic_x(f11.one()).system.polys[0], std::span<const Index>(ones)) == 0);
  const Field f7 = make_field(7);
  CHECK(eval(quintic_y(f7.one()).system.polys[0], std::span<const Index>(ones)) == 0);
}

TEST_CASE("canonical form and equality") {
  const Field f = make_field(7);
  CHECK(poly_equal(var(f, 2, 0) + var(f, 2, 1), var(f, 2, 1) + var(f, 2, 0)));
  const IntPoly x0 = IntPoly::variable(IntegerCoeffs{}, 1, 0);
  CHECK_FALSE(poly_equal(x0, x0.scaled(2)));
  CHECK((x0 - x0).is_zero());
  CHECK((x0 + x0.scaled(2)).terms().size() == 1);
}

TEST_CASE("derivatives") {
  const IntPoly x0 = IntPoly::variable(IntegerCoeffs{}, 1, 0);
  CHECK(poly_equal(derivative(x0.pow(5), 0), x0.pow(4).scaled(5)));
  const Field f = make_field(11);
  const FieldElement mu = f.element(3);
  const auto x = quintic_x(mu).system.polys[0];
  const FieldPoly expected = var(f, 5, 0).pow(4).scaled(5) -
                             (var(f, 5, 1) * var(f, 5, 2) * var(f, 5, 3) * var(f, 5, 4)).scaled(f.mul(5, mu.index()));
  CHECK(poly_equal(derivative(x, 0), expected));
  std::mt19937_64 rng(1);
  for (int i = 0; i < 100; ++i) {
    const auto p = random_poly(f, 4, rng);
    const auto q = random_poly(f, 4, rng);
    CHECK(poly_equal(derivative(derivative(p, 0), 1), derivative(derivative(p, 1), 0)));
    CHECK(poly_equal(derivative(p + q, 2), derivative(p, 2) + derivative(q, 2)));
  }
}

TEST_CASE("cube-root-of-unity substitutions") {
  for (std::uint64_t p : {7, 13}) {
    const Field f = make_field(p);
    const Index z = primitive_root_of_unity(f, 3)->index();
    const Index z2 = f.mul(z, z);
    auto v = [&](std::size_t i) { return var(f, 3, i); };
    const FieldPoly a = v(0) + v(1) + v(2);
    const FieldPoly b = v(0) + v(1).scaled(z) + v(2).scaled(z2);
    const FieldPoly c = v(0) + v(1).scaled(z2) + v(2).scaled(z);
    CHECK(poly_equal(a + b + c, v(0).scaled(3)));
    const FieldPoly cubic = v(0).pow(3) + v(1).pow(3) + v(2).pow(3) - (v(0) * v(1) * v(2)).scaled(3);
    CHECK(poly_equal(a * b * c, cubic));
  }
}

TEST_CASE("monomial substitution") {
  const Field f = make_field(7);
  FieldPoly sum(FieldCoeffs{f}, 5), fifth(FieldCoeffs{f}, 5);
  for (std::size_t i = 0; i < 5; ++i) {
    sum = sum + var(f, 5, i);
    fifth = fifth + var(f, 5, i).pow(5);
  }
  CHECK(poly_equal(substitute(sum, kPhi), fifth));
}

TEST_CASE("substitution commutes with evaluation") {
  std::mt19937_64 rng(2);
  for (std::uint64_t p : {7, 11}) {
    const Field f = make_field(p);
    std::uniform_int_distribution<Index> c(0, p - 1);
    for (int i = 0; i < 200; ++i) {
      FieldMatrix m(f, 3, 3);
      do {
        for (std::size_t r = 0; r < 3; ++r)
          for (std::size_t s = 0; s < 3; ++s) m(r, s) = c(rng);
      } while (m.determinant() == 0);
      const LinearChange change(m);
      const auto poly = random_poly(f, 3, rng, 3, 3);
      const auto x = random_point(f, 3, rng);
      const auto lx = m.apply(x);
      CHECK(eval(substitute(poly, change), std::span<const Index>(x)) == eval(poly, std::span<const Index>(lx)));
    }
  }
}

TEST_CASE("homogeneity and Euler relation for family polynomials") {
  std::mt19937_64 rng(4);
  const Field f = make_field(13);
  const std::vector<FamilyInstance> families{quintic_x(f.element(2)), quintic_y(f.element(2)), quadric_q(make_field(11)),
                                             cubics_v(f.element(2)), cubics_w(f.element(2)), cubics_wtilde(f.element(3))};
  for (const auto& inst : families) {
    for (const auto& poly : inst.system.polys) {
      const Field& g = inst.field;
      CHECK(poly.is_homogeneous());
      const unsigned d = poly.degree();
      FieldPoly euler(FieldCoeffs{g}, poly.nvars());
      for (std::size_t i = 0; i < poly.nvars(); ++i) euler = euler + FieldPoly::variable(FieldCoeffs{g}, poly.nvars(), i) * derivative(poly, i);
      CHECK(poly_equal(euler, poly.scaled(g.from_int(d))));
      for (int k = 0; k < 20; ++k) {
        auto x = random_point(g, poly.nvars(), rng);
        const Index t = 1 + rng() % (g.order() - 1);
        auto tx = x;
        for (auto& v : tx) v = g.mul(t, v);
        CHECK(eval(poly, std::span<const Index>(tx)) == g.mul(g.pow(t, d), eval(poly, std::span<const Index>(x))));
      }
    }
  }
}

TEST_CASE("integer overflow is detected") {
  const IntPoly x = IntPoly::variable(IntegerCoeffs{}, 1, 0);
  CHECK_THROWS_AS(x.scaled(1LL << 40).pow(2), Error);
}

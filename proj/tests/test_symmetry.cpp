#include "doctest.h"
#include "mql/symmetry.hpp"

using namespace mql;

TEST_CASE("G has 125 elements and is (Z/5)^3") {
  const auto g = enumerate_G();
  CHECK(g.order() == 125);
  CHECK(g.contains(ScalingElement{{0, 0, 0, 0}}));
  CHECK(g.contains(ScalingElement{{1, 4, 0, 0}}));
  CHECK_FALSE(g.contains(ScalingElement{{1, 0, 0, 0}}));
  const auto ax = check_axioms(g);
  CHECK(ax.group());
  CHECK(ax.abelian);
  CHECK(ax.exponent == 5);
}

TEST_CASE("G~ has 81 elements, kernel through psi has 27") {
  const auto g = enumerate_Gtilde();
  CHECK(g.order() == 81);
  CHECK(g.contains(GtildeElement{}));
  CHECK(g.contains(GtildeElement{1, 2, 0, 0, 0}));
  CHECK_FALSE(g.contains(GtildeElement{1, 0, 0, 0, 0}));
  CHECK(check_axioms(g).group());

  const auto k = psi_kernel();
  CHECK(k.kernel.order() == 27);
  CHECK(k.quotient_order == 3);
  CHECK(check_axioms(k.kernel).group());
  for (const auto& e : k.kernel.elements) CHECK(e.mu % 3 == 0);
  CHECK(k.generator.mu % 3 == 2);
  CHECK(k.scales_first_block_by_xi3);
}

TEST_CASE("G preserves X_mu; a non-member scaling does not") {
  const Field f = make_field(11);
  const auto x = quintic_x(f.element(2));
  const auto g = enumerate_G();
  std::size_t ok = 0;
  for (const auto& e : g.elements) ok += invariance_check(e, x) ? 1 : 0;
  CHECK(ok == 125);
  const Index xi5 = primitive_root_of_unity(f, 5)->index();
  CHECK_FALSE(invariance_check(std::vector<Index>{1, xi5, 1, 1, 1}, x));
  // Y_mu lives downstairs: only the identity preserves its equation.
  std::size_t y_ok = 0;
  for (const auto& e : g.elements) y_ok += invariance_check(e, quintic_y(f.element(2))) ? 1 : 0;
  CHECK(y_ok == 1);
  CHECK_THROWS_AS(invariance_check(g.elements[1], quintic_x(make_field(7).one())), Error);
}

TEST_CASE("G~ preserves V_1 over F_19") {
  const Field f = make_field(19);
  const auto v = cubics_v(f.one());
  for (const auto& e : enumerate_Gtilde().elements) CHECK(invariance_check(e, v));
  CHECK_THROWS_AS(invariance_check(GtildeElement{}, cubics_v(make_field(13).one())), Error);
}

TEST_CASE("orbits") {
  const Field f = make_field(11);
  const auto g = enumerate_G();
  CHECK(orbit(ProjectivePoint::from_ints(f, {1, 1, 1, 1, 1}), g).size() == 125);
  CHECK(orbit(ProjectivePoint::from_ints(f, {1, 0, 0, 0, 0}), g).size() == 1);
  CHECK(orbit(ProjectivePoint::from_ints(f, {0, 0, 0, 1, 1}), g).size() == 5);
  for (const auto& pt : {ProjectivePoint::from_ints(f, {1, 2, 0, 3, 4}), ProjectivePoint::from_ints(f, {0, 1, 1, 0, 1})})
    CHECK(125 % orbit(pt, g).size() == 0);
}

TEST_CASE("coset acts by xi3 on the first block over F_19") {
  std::mt19937_64 rng(7);
  const Field f = make_field(19);
  for (long long l : {1, 2}) {
    const auto c = coset_action_check(f.element(l), 50, rng);
    CHECK(c.samples == 50);
    CHECK(c.passed());
  }
}

TEST_CASE("phi and psi invariance") {
  const auto phi = phi_invariance(make_field(11));
  CHECK(phi.invariant == 125);
  CHECK(phi.matches_expectation);
  const auto psi = psi_invariance(make_field(19));
  CHECK(psi.invariant == 27);
  CHECK(psi.matches_expectation);
}

#include <random>

#include "doctest.h"
#include "mql/families.hpp"

using namespace mql;

TEST_CASE("family construction") {
  const Field f11 = make_field(11);
  const auto x = quintic_x(f11.one());
  CHECK(x.system.polys[0].terms().size() == 6);
  CHECK(x.system.polys[0].degree() == 5);
  CHECK(x.params_key() == "mu=1");
  CHECK(family_tag(x.id) == "X");
  const Field f7 = make_field(7);
  const auto y0 = quintic_y(f7.zero());
  FieldPoly sum(FieldCoeffs{f7}, 5);
  for (std::size_t i = 0; i < 5; ++i) sum = sum + FieldPoly::variable(FieldCoeffs{f7}, 5, i);
  CHECK(poly_equal(y0.system.polys[0], sum.pow(5)));
  const auto wt = cubics_wtilde(f7.one());
  CHECK(wt.codimension() == 2);
  CHECK(wt.ambient_dim == 5);
  CHECK_THROWS_AS(build_family(FamilyId::QuinticX, {}, f7), Error);
  CHECK_THROWS_AS(quadric_q(f7), Error);
  CHECK_THROWS_AS(cubics_wtilde_from_lambda(f7.zero()), Error);
  CHECK(parse_family("Wt") == FamilyId::CubicsWtilde);
  CHECK_FALSE(parse_family("Z"));
  const auto q = quadric_q(f11);
  CHECK(q.params.count("xi5") == 1);
}

TEST_CASE("maps and strata") {
  const Field f7 = make_field(7);
  const auto ones = ProjectivePoint::from_ints(f7, {1, 1, 1, 1, 1});
  CHECK(apply_map(kPhi, ones) == ones);
  CHECK(apply_map(kPsi, ProjectivePoint::from_ints(f7, {1, 1, 1, 1, 1, 1})) ==
        ProjectivePoint::from_ints(f7, {1, 1, 1, 1, 1, 1}));
  // Every a with a^5 = -1 sends (0:0:0:1:a) to (0:0:0:1:-1).
  for (Index a = 1; a < 7; ++a)
    if (f7.pow(a, 5) == f7.from_int(-1))
      CHECK(apply_map(kPhi, ProjectivePoint(f7, {0, 0, 0, 1, a})) == ProjectivePoint::from_ints(f7, {0, 0, 0, 1, -1}));
  const auto y1 = quintic_y(f7.one());
  CHECK(strata_membership(ProjectivePoint::from_ints(f7, {0, 0, 0, 1, -1}), y1) == Stratum::InPointSetB);
  CHECK(strata_membership(ones, y1) == Stratum::ExtraNode);
  CHECK(strata_membership(ones, quintic_y(f7.element(2))) == Stratum::Generic);
  const Field f11 = make_field(11);
  CHECK(strata_membership(ProjectivePoint::from_ints(f11, {0, 0, 1, 1, -2}), quintic_y(f11.one())) == Stratum::OnLineA);
}

TEST_CASE("special points lie on their families") {
  const Field f11 = make_field(11);
  const auto ones = ProjectivePoint::from_ints(f11, {1, 1, 1, 1, 1});
  CHECK(satisfies(quintic_x(f11.one()), ones));
  CHECK(satisfies(quadric_q(f11), ones));
  for (std::uint64_t p : {7, 11, 31}) {
    const Field f = make_field(p);
    const auto y = quintic_y(f.element(3));
    const auto a = lines_a(f);
    std::uint64_t on_a = 0;
    for_each_normalized(p, 4, 0, projective_point_count(p, 4), [&](const std::vector<Index>& x) {
      if (!satisfies(a, x)) return;
      ++on_a;
      CHECK(satisfies(y, x));
    });
    CHECK(on_a == 10 * p - 10);  // 10(q+1) - 2*10
  }
}

TEST_CASE("phi maps X_mu into Y_mu") {
  for (std::uint64_t p : {7, 11}) {
    const Field f = make_field(p);
    for (long long m : {1, 2}) {
      const auto x = quintic_x(f.element(m));
      const auto y = quintic_y(f.element(m));
      for_each_normalized(p, 4, 0, projective_point_count(p, 4), [&](const std::vector<Index>& pt) {
        if (satisfies(x, pt)) CHECK(satisfies(y, apply_map(kPhi, ProjectivePoint(f, pt))));
      });
    }
  }
}

TEST_CASE("coordinate change identities") {
  CHECK(verify_coordinate_change(make_field(7).one()));
  CHECK(verify_coordinate_change(make_field(13).element(2)));
  CHECK(verify_coordinate_change(make_field(7).element(2)));
  CHECK(verify_coordinate_change(make_field(13).one()));
  CHECK_THROWS_AS(verify_coordinate_change(make_field(5).one()), Error);
}

TEST_CASE("psi carries W_lambda to W~ in the new coordinates") {
  std::mt19937_64 rng(9);
  for (std::uint64_t p : {7, 13, 19})
    for (long long l : {1, 2}) {
      const auto c = check_wtilde_images(make_field(p).element(l), 100, rng);
      CAPTURE(p);
      CAPTURE(l);
      CHECK(c.samples == 100);
      CHECK(c.passed());
    }
}

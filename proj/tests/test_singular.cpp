#include "doctest.h"
#include "mql/singular.hpp"
#include "mql/symmetry.hpp"

using namespace mql;

TEST_CASE("X_1 over F_11 has 125 nodes forming one G-orbit") {
  const Field f = make_field(11);
  const auto x = quintic_x(f.one());
  const auto rep = singular_points(x);
  REQUIRE(rep.points.size() == 125);
  for (const auto& pt : rep.points) CHECK(classify_node(x, pt).is_node);
  const auto orb = orbit(ProjectivePoint::from_ints(f, {1, 1, 1, 1, 1}), enumerate_G());
  CHECK(std::set<ProjectivePoint>(rep.points.begin(), rep.points.end()) == orb);
}

TEST_CASE("X_2 over F_11 is smooth") {
  const Field f = make_field(11);
  CHECK(singular_points(quintic_x(f.element(2))).points.empty());
}

TEST_CASE("singular locus of Y_mu") {
  for (std::uint64_t p : {7, 11}) {
    const Field f = make_field(p);
    CAPTURE(p);
    const auto y2 = singular_points(quintic_y(f.element(2)));
    CHECK(y2.points.size() == 10 * p - 10);
    CHECK(y2.count(Stratum::OnLineA) + y2.count(Stratum::InPointSetB) == 10 * p - 10);
    CHECK(y2.count(Stratum::InPointSetB) == 10);
    const auto y1 = singular_points(quintic_y(f.one()));
    CHECK(y1.points.size() == 10 * p - 9);
    CHECK(y1.count(Stratum::ExtraNode) == 1);
  }
}

TEST_CASE("node classification") {
  const Field f = make_field(11);
  const auto node = ProjectivePoint::from_ints(f, {1, 1, 1, 1, 1});
  CHECK(classify_node(quintic_x(f.one()), node).is_node);
  const auto y1 = quintic_y(f.one());
  const auto c = classify_node(y1, node);
  CHECK(c.is_node);
  CHECK(c.hessian_rank == 4);
  const auto a = classify_node(y1, ProjectivePoint::from_ints(f, {0, 0, 1, 1, -2}));
  CHECK(a.is_singular);
  CHECK_FALSE(a.is_node);
  CHECK(a.hessian_rank <= 3);
  CHECK(a.chart == 2);
  CHECK_THROWS_AS(classify_node(quintic_x(f.one()), ProjectivePoint::from_ints(f, {1, 0, 0, 0, 0})), Error);
  const Field f2 = make_field(2);
  CHECK_THROWS_AS(classify_node(quintic_x(f2.one()), ProjectivePoint::from_ints(f2, {1, 1, 1, 1, 1})), Error);
}

TEST_CASE("phi fibres") {
  const Field f = make_field(11);
  const auto gen = preimage_count(kPhi, apply_map(kPhi, ProjectivePoint::from_ints(f, {1, 2, 3, 4, 5})));
  CHECK(gen.preimages == 625);
  CHECK(gen.predicted == 625);
  CHECK(gen.predicted_on_x == 125);
  // Restricted to X_1 the generic fibre has 125 points.
  const auto x1 = quintic_x(f.one());
  std::mt19937_64 rng(3);
  std::size_t generic_seen = 0;
  for (const auto& pt : sample_points(x1, 40, rng)) {
    if (pt.nonzero_count() != 5) continue;
    ++generic_seen;
    CHECK(preimage_count(kPhi, apply_map(kPhi, pt), &x1).preimages == 125);
  }
  CHECK(generic_seen > 0);
  const auto three = preimage_count(kPhi, apply_map(kPhi, ProjectivePoint::from_ints(f, {0, 0, 1, 3, 7})));
  CHECK(three.preimages == 25);
  const auto b = preimage_count(kPhi, ProjectivePoint::from_ints(f, {0, 0, 0, 1, -1}));
  CHECK(b.stratum == Stratum::InPointSetB);
  CHECK(b.preimages == 5);
  // On A minus B over F_11 the nonzero coordinates cannot all be fifth powers.
  const auto a = preimage_count(kPhi, ProjectivePoint::from_ints(f, {0, 0, 1, 1, -2}));
  CHECK(a.stratum == Stratum::OnLineA);
  CHECK_FALSE(a.ratios_are_powers);
  CHECK(a.preimages < a.predicted);
  const Field f31 = make_field(31);
  const auto a31 = preimage_count(kPhi, ProjectivePoint::from_ints(f31, {0, 0, 1, 5, 25}));
  CHECK(a31.stratum == Stratum::OnLineA);
  CHECK(a31.preimages == 25);
  CHECK_THROWS_AS(preimage_count(kPhi, ProjectivePoint::from_ints(make_field(7), {1, 1, 1, 1, 1})), Error);
}

TEST_CASE("fibre sums") {
  const auto s = phi_fiber_sum(make_field(11));
  CHECK(s.total_preimages == 16105);
  CHECK(s.expected == 16105);
  const auto t = phi_fiber_sum_over_y(make_field(11).one());
  CHECK(t.total_preimages == t.expected);
  CHECK(t.expected == 3300);
}

TEST_CASE("quadric surface evidence over F_11") {
  const auto ev = surface_evidence(make_field(11));
  CHECK(ev.node_on_q);
  CHECK(ev.q_points == 144);
  CHECK(ev.passed());
  CHECK_THROWS_AS(surface_evidence(make_field(13)), Error);
}

TEST_CASE("quadric points over F_31 with two zero coordinates map onto A") {
  const Field f = make_field(31);
  const auto ev = surface_evidence(f);
  CHECK(ev.node_on_q);
  CHECK(ev.q_points == 1024);
  CHECK(ev.q_points_on_x == ev.q_points);
  CHECK(ev.q_smooth_points == ev.q_points);
  CHECK(ev.images_on_y == ev.q_points);
  CHECK(ev.q_points - ev.images_off_a == 20);
  CHECK_FALSE(ev.passed());
}

#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "mql/linalg.hpp"
#include "mql/projective.hpp"

using namespace mql;

namespace {

const std::vector<std::pair<std::uint64_t, int>> kFields{{2, 1}, {3, 1}, {7, 1}, {11, 1}, {2, 2}, {3, 2},
                                                         {2, 3}, {2, 4}, {5, 2}, {11, 2}, {3, 4}, {7, 2}};

}  // namespace

TEST_CASE("field construction") {
  const Field f11 = make_field(11);
  CHECK(f11.order() == 11);
  CHECK(f11.modulus().empty());
  CHECK(f11.name() == "F_11");
  const Field f4 = make_field(2, 2);
  CHECK(f4.order() == 4);
  CHECK(f4.modulus() == std::vector<std::uint64_t>{1, 1, 1});
  CHECK(make_field(3, 4).order() == 81);
  CHECK_THROWS_AS(make_field(4), Error);
  CHECK_THROWS_AS(make_field(3, 5), Error);
  CHECK_THROWS_AS(make_field(3, 0), Error);
  try {
    make_field(4);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kCompositeCharacteristic);
  }
  CHECK(make_field(7, 2) == make_field(7, 2));
}

TEST_CASE("field axioms on random triples") {
  std::mt19937_64 rng(11);
  for (auto [p, k] : kFields) {
    const Field f = make_field(p, k);
    std::uniform_int_distribution<Index> d(0, f.order() - 1);
    CAPTURE(f.name());
    for (int i = 0; i < 1000; ++i) {
      const Index a = d(rng), b = d(rng), c = d(rng);
      CHECK(f.add(a, b) == f.add(b, a));
      CHECK(f.mul(a, b) == f.mul(b, a));
      CHECK(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
      CHECK(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
      CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
      CHECK(f.pow(f.add(a, b), p) == f.add(f.pow(a, p), f.pow(b, p)));
      CHECK(f.sub(f.add(a, b), b) == a);
    }
  }
}

TEST_CASE("Lagrange, inverses and roots of unity, exhaustively for q <= 121") {
  for (auto [p, k] : kFields) {
    const Field f = make_field(p, k);
    if (f.order() > 121) continue;
    CAPTURE(f.name());
    for (Index x = 1; x < f.order(); ++x) {
      CHECK(f.pow(x, f.order() - 1) == Field::kOne);
      CHECK(f.mul(x, f.inv(x)) == Field::kOne);
    }
    for (std::uint64_t n = 1; n <= 10; ++n) {
      std::size_t scan = 0;
      for (Index x = 1; x < f.order(); ++x) scan += f.pow(x, n) == Field::kOne;
      CHECK(nth_roots_of_unity(f, n).size() == std::gcd(n, f.order() - 1));
      CHECK(nth_roots_of_unity(f, n).size() == scan);
    }
  }
  CHECK_THROWS_AS(make_field(7).inv(0), Error);
}

TEST_CASE("roots of unity examples") {
  CHECK(nth_roots_of_unity(make_field(11), 5).size() == 5);
  const auto r7 = nth_roots_of_unity(make_field(7), 5);
  REQUIRE(r7.size() == 1);
  CHECK(r7[0].index() == 1);
  CHECK(nth_roots_of_unity(make_field(2, 2), 3).size() == 3);
  const auto xi = primitive_root_of_unity(make_field(11), 5);
  REQUIRE(xi);
  CHECK(make_field(11).multiplicative_order(xi->index()) == 5);
  CHECK_FALSE(primitive_root_of_unity(make_field(7), 5));
  CHECK(primitive_root_of_unity(make_field(2, 4), 5));
}

TEST_CASE("power tables") {
  const auto t2 = power_table(make_field(2), 5);
  CHECK(t2 == PowerTable{0, 1});
  const auto t11 = power_table(make_field(11), 5);
  CHECK(std::set<Index>(t11.begin(), t11.end()) == std::set<Index>{0, 1, 10});
  const auto t7 = power_table(make_field(7), 3);
  CHECK(std::set<Index>(t7.begin(), t7.end()).size() == 3);
  std::mt19937_64 rng(5);
  const Field f = make_field(3, 4);
  std::uniform_int_distribution<Index> d(0, f.order() - 1);
  for (int i = 0; i < 100; ++i) {
    const Index x = d(rng);
    const std::uint64_t e = rng() % 12;
    Index r = Field::kOne;
    for (std::uint64_t j = 0; j < e; ++j) r = f.mul(r, x);
    CHECK(power_table(f, e)[x] == r);
  }
}

TEST_CASE("field elements") {
  const Field f = make_field(7);
  const FieldElement a = f.element(3), b = f.element(-1);
  CHECK((a + b).index() == 2);
  CHECK((a * b).index() == 4);
  CHECK((a / a) == f.one());
  CHECK(b.index() == 6);
  CHECK_THROWS_AS(FieldElement(f, 7), Error);
  CHECK_THROWS_AS(a + make_field(11).one(), Error);
  const Field f9 = make_field(3, 2);
  CHECK(f9.format(f9.from_coefficients(std::vector<std::uint64_t>{2, 1})) == "2,1");
}

TEST_CASE("matrices over F_q") {
  const Field f = make_field(7);
  FieldMatrix m(f, 3, 3);
  const Index vals[3][3] = {{1, 2, 3}, {0, 1, 4}, {5, 6, 0}};
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) m(i, j) = vals[i][j];
  CHECK(m.rank() == 3);
  CHECK(m.determinant() == f.from_int(1));  // 1*(0-24) - 2*(0-20) + 3*(0-5) = 1
  const auto inv = m.inverse();
  REQUIRE(inv);
  CHECK(m * *inv == FieldMatrix::identity(f, 3));
  FieldMatrix s(f, 2, 2);
  s(0, 0) = 1;
  s(0, 1) = 2;
  s(1, 0) = 2;
  s(1, 1) = 4;
  CHECK(s.rank() == 1);
  CHECK_FALSE(s.inverse());
}

TEST_CASE("projective points and enumeration") {
  const Field f = make_field(3);
  const auto pt = ProjectivePoint::from_ints(f, {0, 2, 1});
  CHECK(pt.coords() == std::vector<Index>{0, 1, 2});
  CHECK(pt.to_string() == "(0:1:2)");
  CHECK_THROWS_AS(ProjectivePoint::from_ints(f, {0, 0, 0}), Error);
  CHECK(projective_point_count(3, 3) == 40);
  std::set<std::vector<Index>> seen;
  for_each_normalized(3, 3, 0, 40, [&](const std::vector<Index>& x) { seen.insert(x); });
  CHECK(seen.size() == 40);
  std::vector<std::vector<Index>> part;
  for_each_normalized(3, 3, 13, 40, [&](const std::vector<Index>& x) { part.push_back(x); });
  CHECK(part.size() == 27);
  CHECK(part.front() == std::vector<Index>{1, 1, 1, 1});
  const auto total = parallel_sum<std::uint64_t>(1000, 3, [](std::uint64_t lo, std::uint64_t hi) { return hi - lo; });
  CHECK(total == 1000);
}

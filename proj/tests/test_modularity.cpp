#include "doctest.h"
#include "mql/modularity.hpp"

using namespace mql;

TEST_CASE("trace formulas") {
  CHECK(trace_x(2, 2, 16) == 1);
  CHECK(trace_y(2, 2, 16) == 1);
  CHECK(trace_x(11, 1, 0) == 3257);
  CHECK(trace_y(11, 1, 0) == 1453);
  CHECK(trace_x(19, 4, 0) == 19 * 19 * 19 + 19 * 19 + 1);
  CHECK(trace_x(121, 1, 0) == 121LL * 121 * 121 + 25 * 121 * 121 - 100 * 121 + 1);
  CHECK_THROWS_AS(trace_x(5, 0, 1), Error);
  CHECK_THROWS_AS(trace_y(25, 0, 1), Error);
  CHECK_THROWS_AS(trace_x(49, 1, 1), Error);   // wrong residue
  CHECK_THROWS_AS(trace_x(8, 3, 1), Error);    // extension with q = 3 mod 5
  CHECK_THROWS_AS(trace_x(12, 2, 1), Error);   // not a prime power
  try {
    trace_x(8, 3, 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kUnsupportedBranch);
  }
  try {
    trace_y(25, 0, 1);
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::kBadReduction);
  }
}

TEST_CASE("traces of X and Y agree for small primes") {
  const long long expected[][2] = {{2, 1}, {3, 7}, {7, 6}, {11, -43}, {13, -28}};
  for (const auto& e : expected) {
    const auto r = compare_traces(static_cast<std::uint64_t>(e[0]));
    CAPTURE(e[0]);
    CHECK(r.ap_x == e[1]);
    CHECK(r.match_ok);
    CHECK(r.weil_ok);
    const auto n = compare_traces(static_cast<std::uint64_t>(e[0]), {std::nullopt, CountAlgo::Naive, 1});
    CHECK(n.ap_x == r.ap_x);
    CHECK(n.ap_y == r.ap_y);
  }
  CHECK_THROWS_AS(compare_traces(5), Error);
  CHECK_THROWS_AS(compare_traces(9), Error);
}

TEST_CASE("Weil bound is an exact integer inequality") {
  CHECK(weil_bound_holds(2, 1));
  CHECK_FALSE(weil_bound_holds(3, 1));
  CHECK(weil_bound_holds(-2, 1));
}

TEST_CASE("Hecke relation at p = 11") {
  const auto h = hecke_consistency(11);
  CHECK(h.t_p == -43);
  CHECK(h.predicted == -813);
  CHECK(h.holds);
  CHECK_THROWS_AS(hecke_consistency(7), Error);
  CHECK_THROWS_AS(hecke_consistency(5), Error);
}

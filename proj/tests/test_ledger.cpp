#include "doctest.h"
#include "mql/error.hpp"
#include "mql/ledger.hpp"

using namespace mql;

namespace {

QuotientLedger quintic_strata(long long total) {
  return {total, {{"open", 0, 125, true}, {"A minus B", -10, 25, false}, {"B", 10, 5, false}}};
}

}  // namespace

TEST_CASE("quotient strata") {
  const auto g = solve_quotient_chi(quintic_strata(-200));
  CHECK(g.unknown_chi == 0);
  CHECK(g.quotient_chi == 0);
  const auto s = solve_quotient_chi(quintic_strata(-75));
  CHECK(s.unknown_chi == 1);
  CHECK(s.quotient_chi == 1);
  CHECK(solve_quotient_chi({7, {{"all", 0, 1, true}}}).unknown_chi == 7);
  CHECK_THROWS_AS(solve_quotient_chi(quintic_strata(-199)), Error);
  CHECK_THROWS_AS(solve_quotient_chi({1, {{"a", 0, 1, false}}}), Error);
}

TEST_CASE("quotient solution is linear in the data") {
  for (long long c : {-3, 2, 7}) {
    QuotientLedger l = quintic_strata(-75 * c);
    for (auto& s : l.strata) s.chi *= c;
    CHECK(solve_quotient_chi(l).unknown_chi == c * solve_quotient_chi(quintic_strata(-75)).unknown_chi);
  }
}

TEST_CASE("resolutions") {
  CHECK(resolution_chi(-200, {{"small", 250, 0}}).chi == 50);
  const auto r = resolution_chi(0, reference_ledger().y_mu_resolution);
  CHECK(r.chi == 200);
  CHECK(r.divisors == 100);
  auto steps = reference_ledger().y_mu_resolution;
  steps.push_back({"extra node", 1, 0});
  CHECK(resolution_chi(1, steps).chi == 202);
}

TEST_CASE("hodge consistency") {
  CHECK(hodge_consistency({-200, 1, 101}));
  CHECK(hodge_consistency({50, 25, 0, 24}));
  CHECK_FALSE(hodge_consistency({50, 25, 0, 23}));
  CHECK_FALSE(hodge_consistency({200, 100, 1}));
  CHECK(hodge_consistency({200, 101, 1}));
  CHECK(hodge_consistency({202, 101, 0}));
}

TEST_CASE("dataset reproduces every figure") {
  for (const auto& c : reproduce_ledger()) {
    CAPTURE(c.name);
    CHECK(c.ok);
  }
  const std::string js = ledger_json();
  CHECK(js.find("\"remaining_nodes\": 60") != std::string::npos);
}

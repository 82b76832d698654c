#include "mql/ledger.hpp"

#include <algorithm>
#include <numeric>

#include "json.hpp"
#include "mql/error.hpp"

namespace mql {

QuotientSolution solve_quotient_chi(const QuotientLedger& ledger) {
  const auto unknowns = std::count_if(ledger.strata.begin(), ledger.strata.end(),
                                      [](const QuotientStratum& s) { return s.unknown; });
  if (unknowns != 1) throw Error(ErrorCode::kInvalidArgument, "exactly one stratum must be unknown");
  long long known = 0;
  const QuotientStratum* target = nullptr;
  for (const auto& s : ledger.strata) {
    if (s.deck_degree <= 0) throw Error(ErrorCode::kInvalidArgument, "deck degree must be positive");
    if (s.unknown)
      target = &s;
    else
      known += s.deck_degree * s.chi;
  }
  const long long rest = ledger.total_chi_upstairs - known;
  if (rest % target->deck_degree != 0)
    throw Error(ErrorCode::kNonIntegralSolution,
                std::to_string(rest) + " is not divisible by " + std::to_string(target->deck_degree));
  QuotientSolution out;
  out.unknown_chi = rest / target->deck_degree;
  out.quotient_chi = out.unknown_chi;
  for (const auto& s : ledger.strata)
    if (!s.unknown) out.quotient_chi += s.chi;
  return out;
}

ResolutionResult resolution_chi(long long base_chi, const std::vector<ResolutionStep>& steps) {
  ResolutionResult r{base_chi, 0};
  for (const auto& s : steps) {
    r.chi += s.delta_chi;
    r.divisors += s.divisors_added;
  }
  return r;
}

bool hodge_consistency(const HodgeTriple& t) {
  if (t.chi != 2 * (t.h11 - t.h21)) return false;
  return !t.defect || *t.defect == t.h11 - t.generic_h11;
}

const LedgerDataset& reference_ledger() {
  static const LedgerDataset data = [] {
    LedgerDataset d;
    // Over A minus B: 10 lines with 3 points removed each.  B: 10 points.
    const std::vector<QuotientStratum> strata{
        {"Y_mu minus A", 0, 125, true}, {"A minus B", 10 * (2 - 3), 25, false}, {"B", 10, 5, false}};
    d.generic_quotient = {d.chi_generic_quintic, strata};
    d.special_quotient = {d.chi_generic_quintic + d.nodes_x1, strata};
    d.special_quotient.strata.front().name = "Y minus A";

    d.x_small_resolution = {{"small resolution of the 125 nodes of X_1, from the smooth member", 2 * 125, 0}};
    // Stratified contributions: chains of four curves over A minus B, the
    // configuration over each triple point (fibre chi 19 before the last step),
    // then small resolution of the 60 nodes that remain.
    d.y_mu_resolution = {{"A4 curves over A minus B", 4 * (10 * (2 - 3)), 4 * 10},
                         {"exceptional configuration over the 10 triple points", 18 * 10, 6 * 10},
                         {"small resolution of 60 = 6*10 nodes", 60, 0}};
    d.y_extra_node = {{"small resolution of the node (1:1:1:1:1)", 1, 0}};
    d.divisor_stages = {3 * 10, 2 * 10 + 1 * 30, 2 * 10};
    d.remaining_nodes = 6 * 10;

    d.hodge = {{"X_mu", {-200, 1, 101, std::nullopt, 1}, true},
               {"X~ (small resolution of X_1)", {50, 25, 0, 24, 1}, true},
               {"Y~_mu as stated", {200, 100, 1, std::nullopt, 1}, false},
               {"Y~", {202, 101, 0, std::nullopt, 1}, true}};
    return d;
  }();
  return data;
}

std::vector<LedgerCheck> reproduce_ledger(const LedgerDataset& d) {
  std::vector<LedgerCheck> out;
  auto add = [&out](std::string name, long long expected, long long computed) {
    out.push_back({std::move(name), expected, computed, expected == computed});
  };

  const auto generic = solve_quotient_chi(d.generic_quotient);
  const auto special = solve_quotient_chi(d.special_quotient);
  add("chi(Y_mu minus A)", 0, generic.unknown_chi);
  add("chi(Y_mu)", 0, generic.quotient_chi);
  add("chi(Y minus A)", 1, special.unknown_chi);
  add("chi(Y)", 1, special.quotient_chi);

  add("chi(X~)", 50, resolution_chi(d.chi_generic_quintic, d.x_small_resolution).chi);
  const auto ymu = resolution_chi(generic.quotient_chi, d.y_mu_resolution);
  add("chi(Y~_mu)", 200, ymu.chi);
  add("exceptional divisors of Y~_mu", 100, ymu.divisors);
  add("exceptional divisors by stage", 100, std::accumulate(d.divisor_stages.begin(), d.divisor_stages.end(), 0LL));
  std::vector<ResolutionStep> y_steps = d.y_mu_resolution;
  y_steps.insert(y_steps.end(), d.y_extra_node.begin(), d.y_extra_node.end());
  add("chi(Y~)", 202, resolution_chi(special.quotient_chi, y_steps).chi);
  add("remaining nodes", 60, d.remaining_nodes);

  for (const auto& h : d.hodge) {
    if (h.triple.defect) add("defect of " + h.name, 24, *h.triple.defect);
    const bool consistent = hodge_consistency(h.triple);
    add("hodge " + h.name + (h.expected_consistent ? " consistent" : " flagged"), h.expected_consistent ? 1 : 0,
        consistent ? 1 : 0);
  }
  // 10 lines glued at 10 triple points, three lines through each.
  add("chi(A) by inclusion-exclusion", 0, 10 * 2 - 2 * 10);
  return out;
}

std::string ledger_json(const LedgerDataset& d) {
  using nlohmann::ordered_json;
  auto quotient = [](const QuotientLedger& q) {
    ordered_json j;
    j["total_chi_upstairs"] = q.total_chi_upstairs;
    j["strata"] = ordered_json::array();
    for (const auto& s : q.strata) {
      ordered_json e;
      e["name"] = s.name;
      if (s.unknown)
        e["chi"] = nullptr;
      else
        e["chi"] = s.chi;
      e["deck_degree"] = s.deck_degree;
      j["strata"].push_back(e);
    }
    return j;
  };
  auto steps = [](const std::vector<ResolutionStep>& v) {
    ordered_json a = ordered_json::array();
    for (const auto& s : v) a.push_back({{"description", s.description}, {"delta_chi", s.delta_chi}, {"divisors_added", s.divisors_added}});
    return a;
  };

  ordered_json j;
  j["version"] = d.version;
  j["generic_quotient"] = quotient(d.generic_quotient);
  j["special_quotient"] = quotient(d.special_quotient);
  j["x_small_resolution"] = steps(d.x_small_resolution);
  j["y_mu_resolution"] = steps(d.y_mu_resolution);
  j["y_extra_node"] = steps(d.y_extra_node);
  j["divisor_stages"] = d.divisor_stages;
  j["remaining_nodes"] = d.remaining_nodes;
  j["chi_cubics_v"] = d.chi_cubics_v;
  j["hodge"] = ordered_json::array();
  for (const auto& h : d.hodge) {
    ordered_json e;
    e["name"] = h.name;
    e["chi"] = h.triple.chi;
    e["h11"] = h.triple.h11;
    e["h21"] = h.triple.h21;
    if (h.triple.defect) e["defect"] = *h.triple.defect;
    e["consistent"] = hodge_consistency(h.triple);
    e["expected_consistent"] = h.expected_consistent;
    j["hodge"].push_back(e);
  }
  j["checks"] = ordered_json::array();
  for (const auto& c : reproduce_ledger(d))
    j["checks"].push_back({{"name", c.name}, {"expected", c.expected}, {"computed", c.computed}, {"ok", c.ok}});
  return j.dump(2);
}

}  // namespace mql

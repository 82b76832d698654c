#pragma once

// Integer bookkeeping for Euler characteristics, resolutions and Hodge numbers
// of the quintic, its quotient and their resolutions.

#include <optional>
#include <string>
#include <vector>

namespace mql {

struct QuotientStratum {
  std::string name;
  long long chi = 0;
  long long deck_degree = 1;
  bool unknown = false;  // chi is solved for
};

struct QuotientLedger {
  long long total_chi_upstairs = 0;
  std::vector<QuotientStratum> strata;
};

struct QuotientSolution {
  long long unknown_chi = 0;
  long long quotient_chi = 0;  // sum of chi over all strata downstairs
};

// total = sum deck * chi; throws kNonIntegralSolution when the unknown is not
// an integer and kInvalidArgument unless exactly one stratum is unknown.
QuotientSolution solve_quotient_chi(const QuotientLedger& ledger);

struct ResolutionStep {
  std::string description;
  long long delta_chi = 0;
  long long divisors_added = 0;
};

struct ResolutionResult {
  long long chi = 0;
  long long divisors = 0;
};

ResolutionResult resolution_chi(long long base_chi, const std::vector<ResolutionStep>& steps);

struct HodgeTriple {
  long long chi = 0;
  long long h11 = 0;
  long long h21 = 0;
  std::optional<long long> defect;  // h11 - generic_h11 when present
  long long generic_h11 = 1;
};

// chi = 2 (h11 - h21), and the defect identity when a defect is recorded.
bool hodge_consistency(const HodgeTriple& t);

struct LedgerCheck {
  std::string name;
  long long expected = 0;
  long long computed = 0;
  bool ok = false;
};

// The quintic/mirror dataset: quotient strata, resolution steps, Hodge triples.
struct LedgerDataset {
  int version = 1;
  QuotientLedger generic_quotient;  // X_mu -> Y_mu, mu^5 != 1
  QuotientLedger special_quotient;  // X_1 -> Y_1
  long long chi_generic_quintic = -200;
  long long nodes_x1 = 125;
  std::vector<ResolutionStep> x_small_resolution;
  std::vector<ResolutionStep> y_mu_resolution;
  std::vector<ResolutionStep> y_extra_node;
  // Exceptional divisors by blow-up stage (points, lines, remaining curves) and
  // the nodes left over at the end.
  std::vector<long long> divisor_stages;
  long long remaining_nodes = 0;
  long long chi_cubics_v = -144;  // stated constant; no computation attached

  struct NamedTriple {
    std::string name;
    HodgeTriple triple;
    bool expected_consistent = true;
  };
  std::vector<NamedTriple> hodge;
};

const LedgerDataset& reference_ledger();

// Every figure the dataset should reproduce; the inconsistent Hodge triple is
// a check that passes when it is flagged.
std::vector<LedgerCheck> reproduce_ledger(const LedgerDataset& data = reference_ledger());

// The dataset plus reproduced checks as a JSON object.
std::string ledger_json(const LedgerDataset& data = reference_ledger());

}  // namespace mql

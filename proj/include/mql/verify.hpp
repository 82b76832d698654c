#pragma once

// End-to-end checks grouped by claim.  Each returns named sub-checks so the
// CLI and the acceptance runner can report them at different granularity.

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace mql {

struct CheckResult {
  std::string name;
  bool ok = false;
  std::string detail;
};

struct VerifyOptions {
  unsigned threads = 1;
  std::optional<std::filesystem::path> cache;
  std::uint64_t seed = 20240601;
};

bool all_ok(const std::vector<CheckResult>& checks);

std::vector<CheckResult> check_trace_match(const VerifyOptions& o);      // X/Y traces agree, p <= 101
std::vector<CheckResult> check_weil_bound(const VerifyOptions& o);       // a_p^2 <= 4p^3, p <= 101
std::vector<CheckResult> check_f2_anchor(const VerifyOptions& o);        // #X_2 = #Y_2 = 16, a_2 = 1
std::vector<CheckResult> check_node_census(const VerifyOptions& o);      // 125 nodes of X_1, one G-orbit
std::vector<CheckResult> check_mirror_singular(const VerifyOptions& o);  // Sing(Y_mu)
std::vector<CheckResult> check_fiber_degrees(const VerifyOptions& o);    // 125 / 25 / 5 and fibre sums
std::vector<CheckResult> check_count_oracle(const VerifyOptions& o);     // table = naive, 30 pairs
std::vector<CheckResult> check_groups(const VerifyOptions& o);           // G, G~, psi-kernel
std::vector<CheckResult> check_coordinate_change_suite(const VerifyOptions& o);
std::vector<CheckResult> check_ledger(const VerifyOptions& o);
std::vector<CheckResult> check_hecke(const VerifyOptions& o);            // p = 11 and 31
std::vector<CheckResult> check_quadric(const VerifyOptions& o);          // Q over 11, 31, 41

const std::vector<std::string>& suite_names();  // nodes, fibers, ..., traces, all
// Throws kInvalidArgument for an unknown suite.
std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& o);

}  // namespace mql

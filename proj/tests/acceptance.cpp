// Acceptance runner: one "CRIT n PASS|FAIL title" line per criterion on stdout,
// failing sub-checks on stderr.
//
// Exit status is 0 when every criterion passes.  With --expect-red a,b,... it is
// 0 exactly when the failing set equals the listed set, so a known and analysed
// failure keeps the test suite green while any new failure (or an unexpected
// recovery) turns it red.

#include <functional>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mql/error.hpp"
#include "mql/verify.hpp"

namespace {

struct Criterion {
  int id;
  const char* title;
  std::function<std::vector<mql::CheckResult>(const mql::VerifyOptions&)> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {1, "traces of X_1 and Y_1 agree for p <= 101", mql::check_trace_match},
      {2, "Weil bound a_p^2 <= 4 p^3 for p <= 101", mql::check_weil_bound},
      {3, "#X_1(F_2) = #Y_1(F_2) = 16 and a_2 = 1", mql::check_f2_anchor},
      {4, "X_1 has 125 nodes forming one G-orbit", mql::check_node_census},
      {5, "singular locus of Y_mu and Y_1", mql::check_mirror_singular},
      {6, "fibre degrees 125 / 25 / 5 of X_mu -> Y_mu", mql::check_fiber_degrees},
      {7, "table counts equal naive counts", mql::check_count_oracle},
      {8, "G and G~ group structure and psi-kernel", mql::check_groups},
      {9, "cubic coordinate change and W~ images", mql::check_coordinate_change_suite},
      {10, "Euler characteristic and Hodge ledger", mql::check_ledger},
      {11, "t_{p^2} = t_p^2 - 2 p^3 at p = 11 and 31", mql::check_hecke},
  };
  return list;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"acceptance criteria"};
  std::vector<int> expect_red;
  std::vector<int> only;
  unsigned threads = 1;
  app.add_option("--expect-red", expect_red, "criteria known to fail")->delimiter(',');
  app.add_option("--only", only, "run only these criteria")->delimiter(',');
  app.add_option("--threads", threads)->check(CLI::PositiveNumber);
  CLI11_PARSE(app, argc, argv);

  mql::VerifyOptions opts;
  opts.threads = threads;
  const std::set<int> wanted(only.begin(), only.end());
  std::set<int> red;
  for (const auto& c : criteria()) {
    if (!wanted.empty() && !wanted.count(c.id)) continue;
    bool ok = false;
    try {
      const auto checks = c.run(opts);
      ok = mql::all_ok(checks);
      for (const auto& k : checks)
        if (!k.ok) std::cerr << "  crit " << c.id << ": " << k.name << (k.detail.empty() ? "" : " [" + k.detail + "]") << "\n";
    } catch (const std::exception& e) {
      std::cerr << "  crit " << c.id << ": raised " << e.what() << "\n";
    }
    if (!ok) red.insert(c.id);
    std::cout << "CRIT " << c.id << ' ' << (ok ? "PASS" : "FAIL") << ' ' << c.title << std::endl;
  }

  if (expect_red.empty()) return red.empty() ? 0 : 1;
  std::set<int> expected;
  for (int id : expect_red)
    if (wanted.empty() || wanted.count(id)) expected.insert(id);
  if (red == expected) {
    std::cout << "failing set matches --expect-red\n";
    return 0;
  }
  std::cout << "failing set differs from --expect-red\n";
  return 1;
}

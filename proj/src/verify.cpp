#include "mql/verify.hpp"

#include <algorithm>
#include <bit>
#include <map>
#include <random>
#include <set>

#include "mql/ledger.hpp"
#include "mql/modularity.hpp"
#include "mql/singular.hpp"
#include "mql/symmetry.hpp"

namespace mql {

namespace {

std::string str(std::uint64_t v) { return std::to_string(v); }
std::string str(long long v) { return std::to_string(v); }

std::vector<std::uint64_t> good_primes_to(std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  for (std::uint64_t p = 2; p <= bound; ++p)
    if (p != 5 && is_prime(p)) out.push_back(p);
  return out;
}

TraceOptions trace_options(const VerifyOptions& o) { return {o.cache, std::nullopt, o.threads}; }

std::string fifth_power_note(const Field& f) {
  std::set<Index> powers;
  for (Index x = 0; x < f.order(); ++x) powers.insert(f.pow(x, 5));
  std::string s;
  for (Index v : powers) s += (s.empty() ? "" : ",") + f.format(v);
  return "fifth powers in " + f.name() + " are {" + s + "}";
}

void append(std::vector<CheckResult>& to, const std::vector<CheckResult>& from) {
  to.insert(to.end(), from.begin(), from.end());
}

}  // namespace

bool all_ok(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.ok; });
}

std::vector<CheckResult> check_trace_match(const VerifyOptions& o) {
  std::vector<CheckResult> out;
  for (const auto p : good_primes_to(101)) {
    const auto r = compare_traces(p, trace_options(o));
    out.push_back({"a_p(X) = a_p(Y) at p=" + str(p), r.match_ok,
                   "#X=" + str(r.count_x) + " #Y=" + str(r.count_y) + " a_p(X)=" + str(r.ap_x) + " a_p(Y)=" + str(r.ap_y)});
  }
  return out;
}

std::vector<CheckResult> check_weil_bound(const VerifyOptions& o) {
  std::vector<CheckResult> out;
  for (const auto p : good_primes_to(101)) {
    const auto r = compare_traces(p, trace_options(o));
    out.push_back({"a_p^2 <= 4p^3 at p=" + str(p), r.weil_ok,
                   "a_p(X)=" + str(r.ap_x) + " a_p(Y)=" + str(r.ap_y) + " 4p^3=" + str(4 * p * p * p)});
  }
  return out;
}

std::vector<CheckResult> check_f2_anchor(const VerifyOptions& o) {
  // Hand oracle: over F_2 both equations read sum + product = 0.
  std::uint64_t oracle = 0;
  for (unsigned v = 1; v < 32; ++v) {
    const unsigned weight = static_cast<unsigned>(std::popcount(v));
    oracle += ((weight + (v == 31 ? 1u : 0u)) % 2 == 0) ? 1 : 0;
  }
  const auto r = compare_traces(2, trace_options(o));
  const Field f2 = make_field(2);
  const auto nx = count_naive(quintic_x(f2.one()), o.threads).count;
  const auto ny = count_naive(quintic_y(f2.one()), o.threads).count;
  return {{"hand oracle over F_2 gives 16", oracle == 16, "count=" + str(oracle)},
          {"#X_2 = 16 (table and naive)", r.count_x == 16 && nx == 16, "table=" + str(r.count_x) + " naive=" + str(nx)},
          {"#Y_2 = 16 (table and naive)", r.count_y == 16 && ny == 16, "table=" + str(r.count_y) + " naive=" + str(ny)},
          {"a_2 = 1 for X and Y", r.ap_x == 1 && r.ap_y == 1, "a_2(X)=" + str(r.ap_x) + " a_2(Y)=" + str(r.ap_y)}};
}

std::vector<CheckResult> check_node_census(const VerifyOptions& o) {
  std::vector<CheckResult> out;
  const auto group = enumerate_G();
  for (std::uint64_t p : {11, 31, 41}) {
    const Field f = make_field(p);
    const auto x = quintic_x(f.one());
    const auto rep = singular_points(x, o.threads);
    std::size_t nodes = 0;
    for (const auto& pt : rep.points) nodes += classify_node(x, pt).is_node ? 1 : 0;
    const auto orb = orbit(ProjectivePoint::from_ints(f, {1, 1, 1, 1, 1}), group);
    const bool same = std::set<ProjectivePoint>(rep.points.begin(), rep.points.end()) == orb;
    const std::string tag = " over F_" + str(p);
    out.push_back({"#Sing(X_1) = 125" + tag, rep.points.size() == 125, "found " + str(rep.points.size())});
    out.push_back({"every singular point is a node" + tag, nodes == rep.points.size(), str(nodes) + " nodes"});
    out.push_back({"Sing(X_1) = G-orbit of (1:1:1:1:1)" + tag, same, "orbit size " + str(orb.size())});
  }
  return out;
}

std::vector<CheckResult> check_mirror_singular(const VerifyOptions& o) {
  std::vector<CheckResult> out;
  const auto ones_on = [](const Field& f) { return ProjectivePoint::from_ints(f, {1, 1, 1, 1, 1}); };
  for (std::uint64_t q : {7, 11, 31}) {
    const Field f = make_field(q);
    const std::string tag = " over F_" + str(q);

    const FieldElement two = f.element(2);
    const bool general = !(two.pow(5) == f.one());
    const auto rep2 = singular_points(quintic_y(two), o.threads);
    out.push_back({"mu=2 satisfies mu^5 != 1" + tag, general, "2^5 = " + two.pow(5).to_string()});
    out.push_back({"#Sing(Y_2) = 10q-10" + tag, rep2.points.size() == 10 * q - 10,
                   "found " + str(rep2.points.size()) + ", 10q-10 = " + str(10 * q - 10)});

    const auto y1 = quintic_y(f.one());
    const auto rep1 = singular_points(y1, o.threads);
    const bool has_extra = rep1.count(Stratum::ExtraNode) == 1 &&
                           std::binary_search(rep1.points.begin(), rep1.points.end(), ones_on(f));
    out.push_back({"#Sing(Y_1) = 10q-9" + tag, rep1.points.size() == 10 * q - 9,
                   "found " + str(rep1.points.size()) + ", 10q-9 = " + str(10 * q - 9)});
    out.push_back({"extra singular point of Y_1 is (1:1:1:1:1)" + tag, has_extra,
                   "ExtraNode count " + str(rep1.count(Stratum::ExtraNode))});
    if (q > 5) {
      const auto c = classify_node(y1, ones_on(f));
      out.push_back({"(1:1:1:1:1) is a node of Y_1" + tag, c.is_node, "Hessian rank " + str(c.hessian_rank)});
    }
  }
  // A parameter that is general over F_31, for contrast with mu = 2 there.
  const Field f31 = make_field(31);
  const auto rep3 = singular_points(quintic_y(f31.element(3)), o.threads);
  out.push_back({"#Sing(Y_3) = 10q-10 over F_31 (3^5 != 1)", rep3.points.size() == 300,
                 "found " + str(rep3.points.size())});
  return out;
}

std::vector<CheckResult> check_fiber_degrees(const VerifyOptions& o) {
  std::vector<CheckResult> out;
  const Field f = make_field(11);
  const auto x1 = quintic_x(f.one());
  std::mt19937_64 rng(o.seed);

  std::size_t generic = 0, generic_ok = 0;
  for (const auto& pt : sample_points(x1, 60, rng)) {
    if (pt.nonzero_count() != 5) continue;
    ++generic;
    generic_ok += preimage_count(kPhi, apply_map(kPhi, pt), &x1).preimages == 125 ? 1 : 0;
  }
  out.push_back({"generic fibre of X_1 -> Y_1 has 125 points over F_11", generic > 0 && generic_ok == generic,
                 str(generic_ok) + " of " + str(generic) + " sampled image points"});

  // Points of A minus B and their rational fibres.
  auto scan_a_minus_b = [&](const Field& field, std::uint64_t& total, std::uint64_t& with_fibre, std::uint64_t& exact) {
    const auto a = lines_a(field);
    for_each_normalized(field.order(), 4, 0, projective_point_count(field.order(), 4), [&](const std::vector<Index>& y) {
      if (!satisfies(a, y)) return;
      const ProjectivePoint pt(field, y);
      if (zero_pattern_stratum(pt) != Stratum::OnLineA) return;
      ++total;
      const auto r = preimage_count(kPhi, pt, field == x1.field ? &x1 : nullptr);
      if (r.preimages > 0) ++with_fibre;
      if (r.preimages == 25) ++exact;
    });
  };
  std::uint64_t total = 0, with_fibre = 0, exact = 0;
  scan_a_minus_b(f, total, with_fibre, exact);
  out.push_back({"fibre of 25 points over A minus B over F_11", exact > 0 && exact == with_fibre,
                 str(exact) + " of " + str(total) + " points of A minus B have 25 rational preimages; " +
                     fifth_power_note(f)});

  const Field f31 = make_field(31);
  std::uint64_t t31 = 0, w31 = 0, e31 = 0;
  scan_a_minus_b(f31, t31, w31, e31);
  const auto witness = preimage_count(kPhi, ProjectivePoint::from_ints(f31, {0, 0, 1, 5, 25}));
  out.push_back({"fibre of 25 points over A minus B over F_31", e31 > 0 && e31 == w31 && witness.preimages == 25,
                 str(e31) + " of " + str(t31) + " points have 25 rational preimages, the rest none; (0:0:1:5:25) has " +
                     str(witness.preimages)});

  const auto b = preimage_count(kPhi, ProjectivePoint::from_ints(f, {0, 0, 0, 1, -1}), &x1);
  out.push_back({"fibre over (0:0:0:1:-1) has 5 points over F_11",
                 b.preimages == 5 && b.stratum == Stratum::InPointSetB, "found " + str(b.preimages)});

  const auto sum = phi_fiber_sum(f, o.threads);
  out.push_back({"sum of phi-fibres over P^4(F_11) = 16105", sum.total_preimages == 16105 && sum.expected == 16105,
                 "sum " + str(sum.total_preimages)});

  for (std::uint64_t q : {11, 31}) {
    const auto s = phi_fiber_sum_over_y(make_field(q).one(), o.threads);
    out.push_back({"sum over Y_1 of fibres in X_1 = #X_1 over F_" + str(q), s.total_preimages == s.expected,
                   "sum " + str(s.total_preimages) + " vs #X_1 " + str(s.expected)});
  }
  return out;
}

std::vector<CheckResult> check_count_oracle(const VerifyOptions& o) {
  std::size_t pairs = 0, agree = 0;
  std::string mismatches;
  for (std::uint64_t p : {2, 3, 7, 11, 13}) {
    const Field f = make_field(p);
    for (long long m : {0, 1, 2}) {
      const FieldElement mu = f.element(m);
      for (const bool is_x : {true, false}) {
        const auto inst = is_x ? quintic_x(mu) : quintic_y(mu);
        const auto table = is_x ? count_x_table(mu, o.threads) : count_y_table(mu, o.threads);
        const auto naive = count_naive(inst, o.threads);
        ++pairs;
        if (table.count == naive.count)
          ++agree;
        else
          mismatches += " " + std::string(family_tag(inst.id)) + "/F_" + str(p) + "/mu=" + str(m);
      }
    }
  }
  return {{"table = naive on 30 instance pairs", pairs == 30 && agree == pairs,
           str(agree) + " of " + str(pairs) + " agree" + (mismatches.empty() ? "" : ";" + mismatches)}};
}

std::vector<CheckResult> check_groups(const VerifyOptions& o) {
  std::vector<CheckResult> out;
  const auto g = enumerate_G();
  const auto gt = enumerate_Gtilde();
  const auto k = psi_kernel();
  const auto ag = check_axioms(g), agt = check_axioms(gt), ak = check_axioms(k.kernel);
  out.push_back({"|G| = 125, abelian of exponent 5", g.order() == 125 && ag.group() && ag.abelian && ag.exponent == 5,
                 "order " + str(std::uint64_t{g.order()}) + ", exponent " + str(ag.exponent)});
  out.push_back({"|G~| = 81", gt.order() == 81 && agt.group(), "order " + str(std::uint64_t{gt.order()})});
  out.push_back({"|H~| = 27, kernel of the action through psi", k.kernel.order() == 27 && ak.group() &&
                     std::all_of(k.kernel.elements.begin(), k.kernel.elements.end(),
                                 [](const GtildeElement& e) { return e.mu % 3 == 0; }),
                 "order " + str(std::uint64_t{k.kernel.order()})});

  const Field f11 = make_field(11);
  const auto x2 = quintic_x(f11.element(2));
  std::size_t inv_g = 0;
  for (const auto& e : g.elements) inv_g += invariance_check(e, x2) ? 1 : 0;
  out.push_back({"G preserves X_2 over F_11", inv_g == 125, str(std::uint64_t{inv_g}) + "/125"});
  const Index xi5 = primitive_root_of_unity(f11, 5)->index();
  out.push_back({"x1 -> xi5 x1 alone does not preserve X_2", !invariance_check(std::vector<Index>{1, xi5, 1, 1, 1}, x2), ""});

  const Field f19 = make_field(19);
  const auto v1 = cubics_v(f19.one());
  std::size_t inv_gt = 0;
  for (const auto& e : gt.elements) inv_gt += invariance_check(e, v1) ? 1 : 0;
  out.push_back({"G~ preserves V_1 over F_19", inv_gt == 81, str(std::uint64_t{inv_gt}) + "/81"});

  out.push_back({"G~/H~ has order 3, generator scales x0,x1,x2 by xi3", k.quotient_order == 3 && k.scales_first_block_by_xi3,
                 "generator " + to_string(k.generator)});
  std::mt19937_64 rng(o.seed);
  const auto coset = coset_action_check(f19.one(), 50, rng);
  out.push_back({"coset action on 50 sampled points over F_19", coset.passed(),
                 str(std::uint64_t{coset.agrees}) + " of " + str(std::uint64_t{coset.samples}) + " agree"});

  const auto phi = phi_invariance(f11, o.threads);
  out.push_back({"phi(g x) = phi(x) on P^4(F_11) for all g in G", phi.matches_expectation,
                 str(std::uint64_t{phi.invariant}) + " of " + str(std::uint64_t{phi.elements})});
  const auto psi = psi_invariance(f19, o.threads);
  out.push_back({"psi(h x) = psi(x) on P^5(F_19) exactly for h in H~", psi.matches_expectation,
                 str(std::uint64_t{psi.invariant}) + " of " + str(std::uint64_t{psi.elements}) + " invariant"});
  return out;
}

std::vector<CheckResult> check_coordinate_change_suite(const VerifyOptions& o) {
  std::vector<CheckResult> out;
  for (std::uint64_t p : {7, 13})
    for (long long l : {1, 2}) {
      const auto c = check_coordinate_change(make_field(p).element(l));
      out.push_back({"new-coordinate equations of W_" + str(l) + " over F_" + str(p), c.passed(),
                     std::string("first ") + (c.first_equation ? "ok" : "differs") + ", second " +
                         (c.second_equation ? "ok" : "differs") + ", nu form " + (c.nu_form ? "ok" : "differs")});
    }
  std::mt19937_64 rng(o.seed);
  for (long long l : {1, 2}) {
    const auto c = check_wtilde_images(make_field(19).element(l), 100, rng);
    out.push_back({"psi maps 100 points of W_" + str(l) + "(F_19) into W~_{1/lambda^3}", c.samples == 100 && c.passed(),
                   str(std::uint64_t{c.on_wtilde}) + " of " + str(std::uint64_t{c.samples})});
  }
  return out;
}

std::vector<CheckResult> check_ledger(const VerifyOptions&) {
  std::vector<CheckResult> out;
  for (const auto& c : reproduce_ledger())
    out.push_back({c.name, c.ok, "expected " + str(c.expected) + ", computed " + str(c.computed)});
  return out;
}

std::vector<CheckResult> check_hecke(const VerifyOptions& o) {
  std::vector<CheckResult> out;
  for (std::uint64_t p : {11, 31}) {
    const auto h = hecke_consistency(p, trace_options(o));
    out.push_back({"t_{p^2} = t_p^2 - 2p^3 at p=" + str(p), h.holds,
                   "t_p=" + str(h.t_p) + " t_{p^2}=" + str(h.t_p2) + " predicted=" + str(h.predicted)});
  }
  return out;
}

std::vector<CheckResult> check_quadric(const VerifyOptions& o) {
  std::vector<CheckResult> out;
  for (std::uint64_t p : {11, 31, 41}) {
    const auto ev = surface_evidence(make_field(p), std::nullopt, o.threads);
    out.push_back({"Q through the node, on X_1, smooth, phi(Q) off A over F_" + str(p), ev.passed(),
                   "#Q=" + str(ev.q_points) + " on X=" + str(ev.q_points_on_x) + " smooth=" + str(ev.q_smooth_points) +
                       " off A=" + str(ev.images_off_a)});
  }
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"nodes", "fibers", "groups", "coordchange", "quadric",
                                              "ledger", "hecke", "traces", "all"};
  return names;
}

std::vector<CheckResult> run_suite(const std::string& suite, const VerifyOptions& o) {
  std::vector<CheckResult> out;
  const bool all = suite == "all";
  if (!all && std::find(suite_names().begin(), suite_names().end(), suite) == suite_names().end())
    throw Error(ErrorCode::kInvalidArgument, "unknown suite '" + suite + "'");
  if (all || suite == "nodes") {
    append(out, check_node_census(o));
    append(out, check_mirror_singular(o));
  }
  if (all || suite == "fibers") append(out, check_fiber_degrees(o));
  if (all || suite == "groups") append(out, check_groups(o));
  if (all || suite == "coordchange") append(out, check_coordinate_change_suite(o));
  if (all || suite == "quadric") append(out, check_quadric(o));
  if (all || suite == "ledger") append(out, check_ledger(o));
  if (all || suite == "hecke") append(out, check_hecke(o));
  if (all || suite == "traces") {
    append(out, check_f2_anchor(o));
    append(out, check_count_oracle(o));
    append(out, check_trace_match(o));
    append(out, check_weil_bound(o));
  }
  return out;
}

}  // namespace mql

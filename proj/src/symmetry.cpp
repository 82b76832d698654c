#include "mql/symmetry.hpp"

#include <algorithm>
#include <numeric>

namespace mql {

namespace {

int mod(int a, int m) { return ((a % m) + m) % m; }

Index root_of_unity(const Field& field, std::uint64_t n) {
  const auto xi = primitive_root_of_unity(field, n);
  if (!xi)
    throw Error(ErrorCode::kRootOfUnityUnavailable,
                field.name() + " has no primitive " + std::to_string(n) + "th root of unity");
  return xi->index();
}

// Exponents of xi9 on x0..x5.
std::array<int, 6> xi9_exponents(const GtildeElement& g) {
  return {mod(3 * g.alpha + g.mu, 9),  mod(3 * g.beta + g.mu, 9),     mod(g.mu, 9),
          mod(-3 * g.delta - g.mu, 9), mod(-3 * g.epsilon - g.mu, 9), mod(-g.mu, 9)};
}

template <class E>
AxiomReport check_axioms_impl(const GroupSpec<E>& group) {
  AxiomReport r;
  const auto& els = group.elements;
  r.identity = group.contains(group.identity);
  for (const auto& a : els) r.identity = r.identity && compose(a, group.identity) == a && compose(group.identity, a) == a;

  r.closure = true;
  r.abelian = true;
  for (const auto& a : els)
    for (const auto& b : els) {
      const E ab = compose(a, b);
      r.closure = r.closure && group.contains(ab);
      r.abelian = r.abelian && ab == compose(b, a);
    }

  r.inverses = true;
  for (const auto& a : els) {
    const E inv = inverse(a);
    r.inverses = r.inverses && group.contains(inv) && compose(a, inv) == group.identity;
  }

  r.associativity = true;
  for (const auto& a : els)
    for (const auto& b : els) {
      const E ab = compose(a, b);
      for (const auto& c : els) r.associativity = r.associativity && compose(ab, c) == compose(a, compose(b, c));
    }

  r.exponent = 1;
  for (const auto& a : els) {
    std::uint64_t order = 1;
    for (E x = a; !(x == group.identity); x = compose(x, a)) ++order;
    r.exponent = std::lcm(r.exponent, order);
  }
  return r;
}

std::set<ProjectivePoint> orbit_impl(const ProjectivePoint& point, const auto& group) {
  std::set<ProjectivePoint> out;
  for (const auto& g : group.elements) out.insert(act(action_scalars(g, point.field()), point));
  return out;
}

bool same_projective_image(const Field& f, const std::vector<Index>& y, const std::vector<Index>& z) {
  std::size_t j = 0;
  while (j < y.size() && y[j] == 0) ++j;
  if (j == y.size() || z[j] == 0) return false;
  const Index r = f.div(z[j], y[j]);
  for (std::size_t i = 0; i < y.size(); ++i)
    if (z[i] != f.mul(r, y[i])) return false;
  return true;
}

// For every element's scalars, whether x -> (x_i^e) is unchanged by the action on all of P^n(F_q).
std::vector<bool> power_map_invariance(const Field& f, std::size_t n, unsigned exponent,
                                       const std::vector<std::vector<Index>>& all_scalars, unsigned threads) {
  const std::uint64_t q = f.order();
  std::vector<Index> power(q);
  for (Index x = 0; x < q; ++x) power[x] = f.pow(x, exponent);
  std::vector<bool> out;
  const std::uint64_t total = projective_point_count(q, n);
  for (const auto& s : all_scalars) {
    std::vector<Index> c(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) c[i] = f.pow(s[i], exponent);
    const std::uint64_t failures = parallel_sum<std::uint64_t>(total, threads, [&](std::uint64_t lo, std::uint64_t hi) {
      std::uint64_t bad = 0;
      std::vector<Index> y(n + 1), z(n + 1);
      for_each_normalized(q, n, lo, hi, [&](const std::vector<Index>& x) {
        if (bad) return;
        for (std::size_t i = 0; i <= n; ++i) {
          y[i] = power[x[i]];
          z[i] = f.mul(c[i], y[i]);
        }
        if (!same_projective_image(f, y, z)) ++bad;
      });
      return bad;
    });
    out.push_back(failures == 0);
  }
  return out;
}

}  // namespace

bool is_member(const ScalingElement& g) noexcept {
  int sum = 0;
  for (int l : g.lambda) {
    if (l < 0 || l >= 5) return false;
    sum += l;
  }
  return sum % 5 == 0;
}

bool is_member(const GtildeElement& g) noexcept {
  for (int v : {g.alpha, g.beta, g.delta, g.epsilon})
    if (v < 0 || v >= 3) return false;
  if (g.mu < 0 || g.mu >= 9) return false;
  return g.mu % 3 == (g.alpha + g.beta) % 3 && g.mu % 3 == (g.delta + g.epsilon) % 3;
}

ScalingElement compose(const ScalingElement& a, const ScalingElement& b) noexcept {
  ScalingElement c;
  for (std::size_t i = 0; i < 4; ++i) c.lambda[i] = mod(a.lambda[i] + b.lambda[i], 5);
  return c;
}

GtildeElement compose(const GtildeElement& a, const GtildeElement& b) noexcept {
  return {mod(a.alpha + b.alpha, 3), mod(a.beta + b.beta, 3), mod(a.delta + b.delta, 3),
          mod(a.epsilon + b.epsilon, 3), mod(a.mu + b.mu, 9)};
}

ScalingElement inverse(const ScalingElement& g) noexcept {
  ScalingElement c;
  for (std::size_t i = 0; i < 4; ++i) c.lambda[i] = mod(-g.lambda[i], 5);
  return c;
}

GtildeElement inverse(const GtildeElement& g) noexcept {
  return {mod(-g.alpha, 3), mod(-g.beta, 3), mod(-g.delta, 3), mod(-g.epsilon, 3), mod(-g.mu, 9)};
}

std::string to_string(const ScalingElement& g) {
  return "(" + std::to_string(g.lambda[0]) + "," + std::to_string(g.lambda[1]) + "," + std::to_string(g.lambda[2]) +
         "," + std::to_string(g.lambda[3]) + ")";
}

std::string to_string(const GtildeElement& g) {
  return "(" + std::to_string(g.alpha) + "," + std::to_string(g.beta) + "," + std::to_string(g.delta) + "," +
         std::to_string(g.epsilon) + ";" + std::to_string(g.mu) + ")";
}

template <class E>
bool GroupSpec<E>::contains(const E& g) const {
  return std::binary_search(elements.begin(), elements.end(), g);
}

template struct GroupSpec<ScalingElement>;
template struct GroupSpec<GtildeElement>;

GroupSpec<ScalingElement> enumerate_G() {
  GroupSpec<ScalingElement> g;
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b)
      for (int c = 0; c < 5; ++c)
        for (int d = 0; d < 5; ++d)
          if (ScalingElement e{{a, b, c, d}}; is_member(e)) g.elements.push_back(e);
  std::sort(g.elements.begin(), g.elements.end());
  return g;
}

GroupSpec<GtildeElement> enumerate_Gtilde() {
  GroupSpec<GtildeElement> g;
  for (int a = 0; a < 3; ++a)
    for (int b = 0; b < 3; ++b)
      for (int d = 0; d < 3; ++d)
        for (int e = 0; e < 3; ++e)
          for (int m = 0; m < 9; ++m)
            if (GtildeElement x{a, b, d, e, m}; is_member(x)) g.elements.push_back(x);
  std::sort(g.elements.begin(), g.elements.end());
  return g;
}

AxiomReport check_axioms(const GroupSpec<ScalingElement>& group) { return check_axioms_impl(group); }
AxiomReport check_axioms(const GroupSpec<GtildeElement>& group) { return check_axioms_impl(group); }

std::vector<Index> action_scalars(const ScalingElement& g, const Field& field) {
  const Index xi5 = root_of_unity(field, 5);
  std::vector<Index> s{Field::kOne};
  for (int l : g.lambda) s.push_back(field.pow(xi5, static_cast<std::uint64_t>(mod(l, 5))));
  return s;
}

std::vector<Index> action_scalars(const GtildeElement& g, const Field& field) {
  const Index xi9 = root_of_unity(field, 9);
  std::vector<Index> s;
  for (int e : xi9_exponents(g)) s.push_back(field.pow(xi9, static_cast<std::uint64_t>(e)));
  return s;
}

ProjectivePoint act(const std::vector<Index>& scalars, const ProjectivePoint& point) {
  if (scalars.size() != point.size()) throw Error(ErrorCode::kDimensionMismatch, "action arity");
  const Field& f = point.field();
  std::vector<Index> out(point.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.mul(scalars[i], point[i]);
  return {f, std::move(out)};
}

FieldPoly act(const std::vector<Index>& scalars, const FieldPoly& p) {
  if (scalars.size() != p.nvars()) throw Error(ErrorCode::kDimensionMismatch, "action arity");
  const Field& f = p.ring().field;
  std::vector<FieldPoly::Term> terms;
  terms.reserve(p.terms().size());
  for (const auto& t : p.terms()) {
    Index c = t.coeff;
    for (std::size_t i = 0; i < scalars.size(); ++i) c = f.mul(c, f.pow(scalars[i], t.exponents[i]));
    terms.push_back({t.exponents, c});
  }
  return FieldPoly(p.ring(), p.nvars(), std::move(terms));
}

bool invariance_check(const std::vector<Index>& scalars, const FamilyInstance& instance) {
  for (const auto& p : instance.system.polys) {
    const FieldPoly image = act(scalars, p);
    const bool matched = std::any_of(instance.system.polys.begin(), instance.system.polys.end(),
                                     [&](const FieldPoly& target) { return proportionality(image, target).has_value(); });
    if (!matched) return false;
  }
  return true;
}

bool invariance_check(const ScalingElement& g, const FamilyInstance& instance) {
  if (instance.ambient_dim != 4) throw Error(ErrorCode::kDimensionMismatch, "G acts on P^4");
  return invariance_check(action_scalars(g, instance.field), instance);
}

bool invariance_check(const GtildeElement& g, const FamilyInstance& instance) {
  if (instance.ambient_dim != 5) throw Error(ErrorCode::kDimensionMismatch, "G~ acts on P^5");
  return invariance_check(action_scalars(g, instance.field), instance);
}

std::set<ProjectivePoint> orbit(const ProjectivePoint& point, const GroupSpec<ScalingElement>& group) {
  return orbit_impl(point, group);
}

std::set<ProjectivePoint> orbit(const ProjectivePoint& point, const GroupSpec<GtildeElement>& group) {
  return orbit_impl(point, group);
}

PsiKernelReport psi_kernel() {
  PsiKernelReport r;
  const auto full = enumerate_Gtilde();
  for (const auto& g : full.elements) {
    const auto e = xi9_exponents(g);
    // Cubing multiplies xi9-exponents by 3; the cubes agree projectively iff all 3e_i coincide mod 9.
    const bool trivial = std::all_of(e.begin(), e.end(), [&](int x) { return mod(3 * x, 9) == mod(3 * e[0], 9); });
    if (trivial) r.kernel.elements.push_back(g);
  }
  r.quotient_order = full.order() / r.kernel.order();
  const auto gen = std::find_if(full.elements.begin(), full.elements.end(),
                                [](const GtildeElement& g) { return g.mu % 3 == 2; });
  r.generator = *gen;
  // xi9^{3e} = xi3^e; normalize so x5 carries exponent 0.
  const auto e = xi9_exponents(r.generator);
  for (std::size_t i = 0; i < 6; ++i) r.induced_xi3_exponents[i] = mod(e[i] - e[5], 3);
  r.scales_first_block_by_xi3 = r.induced_xi3_exponents == std::array<int, 6>{1, 1, 1, 0, 0, 0};
  return r;
}

CosetActionCheck coset_action_check(const FieldElement& lambda, std::size_t samples, std::mt19937_64& rng) {
  const Field& f = lambda.field();
  const auto report = psi_kernel();
  const auto scalars = action_scalars(report.generator, f);
  const Index xi3 = f.pow(root_of_unity(f, 9), 3);
  const auto v = cubics_v(lambda);
  const auto w = cubics_w(lambda);

  CosetActionCheck c;
  for (const auto& pt : sample_points(v, samples, rng)) {
    ++c.samples;
    const ProjectivePoint y = apply_map(kPsi, pt);
    if (satisfies(w, y)) ++c.image_on_w;
    auto scaled = y.coords();
    for (std::size_t i = 0; i < 3; ++i) scaled[i] = f.mul(xi3, scaled[i]);
    const ProjectivePoint expected(f, std::move(scaled));
    if (apply_map(kPsi, act(scalars, pt)) == expected) ++c.agrees;
    if (satisfies(w, expected)) ++c.stays_on_w;
  }
  return c;
}

MapInvarianceReport phi_invariance(const Field& field, unsigned threads) {
  const auto g = enumerate_G();
  std::vector<std::vector<Index>> all;
  for (const auto& e : g.elements) all.push_back(action_scalars(e, field));
  const auto flags = power_map_invariance(field, 4, 5, all, threads);
  MapInvarianceReport r;
  r.elements = flags.size();
  r.invariant = static_cast<std::size_t>(std::count(flags.begin(), flags.end(), true));
  r.expected = g.order();
  r.matches_expectation = r.invariant == r.expected;
  return r;
}

MapInvarianceReport psi_invariance(const Field& field, unsigned threads) {
  const auto g = enumerate_Gtilde();
  const auto kernel = psi_kernel().kernel;
  std::vector<std::vector<Index>> all;
  for (const auto& e : g.elements) all.push_back(action_scalars(e, field));
  const auto flags = power_map_invariance(field, 5, 3, all, threads);
  MapInvarianceReport r;
  r.elements = flags.size();
  r.expected = kernel.order();
  r.matches_expectation = true;
  for (std::size_t i = 0; i < flags.size(); ++i) {
    if (flags[i]) ++r.invariant;
    r.matches_expectation = r.matches_expectation && flags[i] == kernel.contains(g.elements[i]);
  }
  return r;
}

}  // namespace mql

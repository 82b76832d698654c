#include "mql/families.hpp"

#include <array>

namespace mql {

namespace {

IntPoly ivar(std::size_t nvars, std::size_t i) { return IntPoly::variable(IntegerCoeffs{}, nvars, i); }
IntPoly iconst(std::size_t nvars, long long c) { return IntPoly::constant(IntegerCoeffs{}, nvars, c); }

IntPoly product(std::size_t nvars, std::initializer_list<std::size_t> vars) {
  IntPoly p = iconst(nvars, 1);
  for (const auto v : vars) p = p * ivar(nvars, v);
  return p;
}

IntPoly sum_of(std::size_t nvars, std::initializer_list<std::size_t> vars) {
  IntPoly p(IntegerCoeffs{}, nvars);
  for (const auto v : vars) p = p + ivar(nvars, v);
  return p;
}

const FieldElement& required(const ParamMap& params, const std::string& name) {
  const auto it = params.find(name);
  if (it == params.end()) throw Error(ErrorCode::kMissingParameter, "parameter '" + name + "'");
  return it->second;
}

void check_field(const FieldElement& x, const Field& field) {
  if (!(x.field() == field)) throw Error(ErrorCode::kFieldMismatch, "parameter lives in " + x.field().name());
}

FieldSystem instantiate(const std::vector<IntPoly>& tmpl, std::size_t keep, const FieldElement& param) {
  std::vector<FieldPoly> polys;
  polys.reserve(tmpl.size());
  const std::array<FieldElement, 1> params{param};
  for (const auto& t : tmpl) polys.push_back(specialize(t, keep, params));
  return FieldSystem(keep, std::move(polys), true);
}

FieldSystem reduce_all(const std::vector<IntPoly>& polys, const Field& field) {
  std::vector<FieldPoly> out;
  out.reserve(polys.size());
  for (const auto& p : polys) out.push_back(reduce(p, field));
  return FieldSystem(polys.front().nvars(), std::move(out), true);
}

// A: points of {sum x = 0} with at least two zero coordinates, cut out by
// the hyperplane and the five quartic products of four distinct coordinates.
std::vector<IntPoly> lines_a_polys() {
  std::vector<IntPoly> out{sum_of(5, {0, 1, 2, 3, 4})};
  for (std::size_t skip = 0; skip < 5; ++skip) {
    IntPoly p = iconst(5, 1);
    for (std::size_t i = 0; i < 5; ++i)
      if (i != skip) p = p * ivar(5, i);
    out.push_back(p);
  }
  return out;
}

// B: at least three zero coordinates, cut out by the ten cubic products.
std::vector<IntPoly> points_b_polys() {
  std::vector<IntPoly> out{sum_of(5, {0, 1, 2, 3, 4})};
  for (std::size_t a = 0; a < 5; ++a)
    for (std::size_t b = a + 1; b < 5; ++b)
      for (std::size_t c = b + 1; c < 5; ++c) out.push_back(product(5, {a, b, c}));
  return out;
}

}  // namespace

std::string_view family_tag(FamilyId id) noexcept {
  switch (id) {
    case FamilyId::QuinticX: return "X";
    case FamilyId::QuinticY: return "Y";
    case FamilyId::QuadricQ: return "Q";
    case FamilyId::CubicsV: return "V";
    case FamilyId::CubicsW: return "W";
    case FamilyId::CubicsWtilde: return "Wt";
    case FamilyId::LinesA: return "A";
    case FamilyId::PointsB: return "B";
  }
  return "?";
}

std::optional<FamilyId> parse_family(std::string_view tag) noexcept {
  for (const auto id : {FamilyId::QuinticX, FamilyId::QuinticY, FamilyId::QuadricQ, FamilyId::CubicsV,
                        FamilyId::CubicsW, FamilyId::CubicsWtilde, FamilyId::LinesA, FamilyId::PointsB}) {
    if (family_tag(id) == tag) return id;
  }
  return std::nullopt;
}

IntPoly quintic_x_template() {
  IntPoly f(IntegerCoeffs{}, 6);
  for (std::size_t i = 0; i < 5; ++i) f = f + ivar(6, i).pow(5);
  return f - product(6, {0, 1, 2, 3, 4, 5}).scaled(5);
}

IntPoly quintic_y_template() {
  const IntPoly mu5 = ivar(6, 5).pow(5);
  return sum_of(6, {0, 1, 2, 3, 4}).pow(5) - (product(6, {0, 1, 2, 3, 4}) * mu5).scaled(3125);
}

std::vector<IntPoly> quadric_q_template() {
  const IntPoly xi = ivar(6, 5);
  auto x = [](std::size_t i) { return ivar(6, i); };
  auto z = [&xi](unsigned e) { return xi.pow(e); };
  IntPoly linear = x(0) + z(1) * x(1) + z(2) * x(2) + z(3) * x(3) + z(4) * x(4);
  IntPoly quadratic = x(0) * x(1) + z(1) * x(0) * x(2) + z(2) * x(0) * x(3) + z(3) * x(0) * x(4) +
                      z(2) * x(1) * x(2) + z(3) * x(1) * x(3) + z(4) * x(1) * x(4) + z(4) * x(2) * x(3) +
                      x(2) * x(4) + z(1) * x(3) * x(4);
  return {linear, quadratic};
}

std::vector<IntPoly> cubics_v_template() {
  const IntPoly lam = ivar(7, 6);
  IntPoly first = ivar(7, 0).pow(3) + ivar(7, 1).pow(3) + ivar(7, 2).pow(3) - (lam * product(7, {3, 4, 5})).scaled(3);
  IntPoly second = ivar(7, 3).pow(3) + ivar(7, 4).pow(3) + ivar(7, 5).pow(3) - (lam * product(7, {0, 1, 2})).scaled(3);
  return {first, second};
}

std::vector<IntPoly> cubics_w_template() {
  const IntPoly lam3 = ivar(7, 6).pow(3);
  IntPoly first = sum_of(7, {0, 1, 2}).pow(3) - (lam3 * product(7, {3, 4, 5})).scaled(27);
  IntPoly second = sum_of(7, {3, 4, 5}).pow(3) - (lam3 * product(7, {0, 1, 2})).scaled(27);
  return {first, second};
}

std::vector<IntPoly> cubics_wtilde_template() {
  const IntPoly nu = ivar(7, 6);
  IntPoly first = (sum_of(7, {3, 4, 5}) - nu * ivar(7, 0)).pow(3) - product(7, {3, 4, 5}).scaled(27);
  IntPoly second = (sum_of(7, {0, 1, 2}) - nu * ivar(7, 3)).pow(3) - product(7, {0, 1, 2}).scaled(27);
  return {first, second};
}

FamilyInstance build_family(FamilyId id, const ParamMap& params, const Field& field) {
  for (const auto& [name, value] : params) check_field(value, field);
  switch (id) {
    case FamilyId::QuinticX: {
      const auto& mu = required(params, "mu");
      return {id, field, {{"mu", mu}}, instantiate({quintic_x_template()}, 5, mu), 4, true};
    }
    case FamilyId::QuinticY: {
      const auto& mu = required(params, "mu");
      return {id, field, {{"mu", mu}}, instantiate({quintic_y_template()}, 5, mu), 4, true};
    }
    case FamilyId::QuadricQ: {
      std::optional<FieldElement> xi;
      if (const auto it = params.find("xi5"); it != params.end()) {
        xi = it->second;
        if (xi->is_zero() || field.multiplicative_order(xi->index()) != 5)
          throw Error(ErrorCode::kInvalidArgument, "xi5 must have exact order 5");
      } else {
        xi = primitive_root_of_unity(field, 5);
        if (!xi) throw Error(ErrorCode::kRootOfUnityUnavailable, "no primitive 5th root of unity in " + field.name());
      }
      return {id, field, {{"xi5", *xi}}, instantiate(quadric_q_template(), 5, *xi), 4, true};
    }
    case FamilyId::CubicsV: {
      const auto& lam = required(params, "lambda");
      return {id, field, {{"lambda", lam}}, instantiate(cubics_v_template(), 6, lam), 5, true};
    }
    case FamilyId::CubicsW: {
      const auto& lam = required(params, "lambda");
      return {id, field, {{"lambda", lam}}, instantiate(cubics_w_template(), 6, lam), 5, true};
    }
    case FamilyId::CubicsWtilde: {
      if (const auto it = params.find("nu"); it != params.end())
        return {id, field, {{"nu", it->second}}, instantiate(cubics_wtilde_template(), 6, it->second), 5, true};
      const auto it = params.find("lambda");
      if (it == params.end()) throw Error(ErrorCode::kMissingParameter, "parameter 'nu' (or 'lambda')");
      if (it->second.is_zero()) throw Error(ErrorCode::kZeroDenominator, "nu = 1/lambda^3 with lambda = 0");
      const FieldElement nu = it->second.pow(3).inverse();
      return {id, field, {{"nu", nu}}, instantiate(cubics_wtilde_template(), 6, nu), 5, true};
    }
    case FamilyId::LinesA:
      return {id, field, {}, reduce_all(lines_a_polys(), field), 4, false};
    case FamilyId::PointsB:
      return {id, field, {}, reduce_all(points_b_polys(), field), 4, false};
  }
  throw Error(ErrorCode::kInvalidArgument, "unknown family");
}

FamilyInstance quintic_x(const FieldElement& mu) { return build_family(FamilyId::QuinticX, {{"mu", mu}}, mu.field()); }
FamilyInstance quintic_y(const FieldElement& mu) { return build_family(FamilyId::QuinticY, {{"mu", mu}}, mu.field()); }

FamilyInstance quadric_q(const Field& field, std::optional<FieldElement> xi5) {
  ParamMap params;
  if (xi5) params.emplace("xi5", *xi5);
  return build_family(FamilyId::QuadricQ, params, field);
}

FamilyInstance cubics_v(const FieldElement& lambda) {
  return build_family(FamilyId::CubicsV, {{"lambda", lambda}}, lambda.field());
}
FamilyInstance cubics_w(const FieldElement& lambda) {
  return build_family(FamilyId::CubicsW, {{"lambda", lambda}}, lambda.field());
}
FamilyInstance cubics_wtilde(const FieldElement& nu) {
  return build_family(FamilyId::CubicsWtilde, {{"nu", nu}}, nu.field());
}
FamilyInstance cubics_wtilde_from_lambda(const FieldElement& lambda) {
  return build_family(FamilyId::CubicsWtilde, {{"lambda", lambda}}, lambda.field());
}
FamilyInstance lines_a(const Field& field) { return build_family(FamilyId::LinesA, {}, field); }
FamilyInstance points_b(const Field& field) { return build_family(FamilyId::PointsB, {}, field); }

std::string FamilyInstance::params_key() const {
  std::string out;
  for (const auto& [name, value] : params) {
    if (!out.empty()) out += ';';
    out += name + "=" + value.to_string();
  }
  return out;
}

const FieldElement& FamilyInstance::param(const std::string& name) const { return required(params, name); }

bool satisfies(const FamilyInstance& instance, const std::vector<Index>& coords) {
  if (coords.size() != instance.ambient_dim + 1) throw Error(ErrorCode::kDimensionMismatch, "point arity");
  for (const auto& f : instance.system.polys)
    if (eval(f, std::span<const Index>(coords)) != Field::kZero) return false;
  return true;
}

bool satisfies(const FamilyInstance& instance, const ProjectivePoint& point) {
  if (!(point.field() == instance.field)) throw Error(ErrorCode::kFieldMismatch, "point field");
  return satisfies(instance, point.coords());
}

LinearChange::LinearChange(FieldMatrix matrix) : matrix_(std::move(matrix)) {
  if (matrix_.rows() != matrix_.cols()) throw Error(ErrorCode::kDimensionMismatch, "linear change must be square");
  if (matrix_.determinant() == Field::kZero) throw Error(ErrorCode::kInvalidArgument, "linear change is singular");
}

LinearChange LinearChange::inverse() const { return LinearChange(*matrix_.inverse()); }

ProjectivePoint apply_map(const MonomialMap& map, const ProjectivePoint& point) {
  if (point.size() != map.arity) throw Error(ErrorCode::kDimensionMismatch, "monomial map arity");
  std::vector<Index> image(point.size());
  for (std::size_t i = 0; i < image.size(); ++i) image[i] = point.field().pow(point[i], map.exponent);
  return {point.field(), std::move(image)};
}

ProjectivePoint apply_map(const LinearChange& change, const ProjectivePoint& point) {
  if (point.size() != change.arity()) throw Error(ErrorCode::kDimensionMismatch, "linear change arity");
  if (!(point.field() == change.matrix().field())) throw Error(ErrorCode::kFieldMismatch, "linear change field");
  return {point.field(), change.matrix().apply(point.coords())};
}

FieldPoly substitute(const FieldPoly& f, const MonomialMap& map) {
  if (f.nvars() != map.arity) throw Error(ErrorCode::kDimensionMismatch, "monomial map arity");
  std::vector<FieldPoly> images;
  images.reserve(map.arity);
  for (std::size_t i = 0; i < map.arity; ++i) images.push_back(FieldPoly::variable(f.ring(), map.arity, i).pow(map.exponent));
  return substitute(f, std::span<const FieldPoly>(images));
}

FieldPoly substitute(const FieldPoly& f, const LinearChange& change) {
  if (f.nvars() != change.arity()) throw Error(ErrorCode::kDimensionMismatch, "linear change arity");
  if (!(f.ring().field == change.matrix().field())) throw Error(ErrorCode::kFieldMismatch, "linear change field");
  const std::size_t n = change.arity();
  std::vector<FieldPoly> images;
  images.reserve(n);
  for (std::size_t i = 0; i < n; ++i) {
    std::vector<FieldPoly::Term> terms;
    for (std::size_t j = 0; j < n; ++j) {
      Monomial m(n, 0);
      m[j] = 1;
      terms.push_back({std::move(m), change.matrix()(i, j)});
    }
    images.emplace_back(f.ring(), n, std::move(terms));
  }
  return substitute(f, std::span<const FieldPoly>(images));
}

std::string_view to_string(Stratum s) noexcept {
  switch (s) {
    case Stratum::Generic: return "Generic";
    case Stratum::OnLineA: return "OnLineA";
    case Stratum::InPointSetB: return "InPointSetB";
    case Stratum::ExtraNode: return "ExtraNode";
  }
  return "?";
}

Stratum zero_pattern_stratum(const ProjectivePoint& point) {
  if (point.size() != 5) throw Error(ErrorCode::kDimensionMismatch, "strata are defined on P^4");
  const Field& f = point.field();
  Index sum = Field::kZero;
  for (const auto c : point.coords()) sum = f.add(sum, c);
  const std::size_t zeros = 5 - point.nonzero_count();
  if (sum != Field::kZero) return Stratum::Generic;
  if (zeros == 3) return Stratum::InPointSetB;
  if (zeros == 2) return Stratum::OnLineA;
  return Stratum::Generic;
}

Stratum strata_membership(const ProjectivePoint& point, const FamilyInstance& y_instance) {
  if (y_instance.id != FamilyId::QuinticY) throw Error(ErrorCode::kInvalidArgument, "strata need a Y_mu instance");
  if (!(point.field() == y_instance.field)) throw Error(ErrorCode::kFieldMismatch, "point field");
  const Stratum s = zero_pattern_stratum(point);
  if (s != Stratum::Generic) return s;
  const bool all_ones = std::all_of(point.coords().begin(), point.coords().end(), [](Index c) { return c == Field::kOne; });
  if (all_ones && y_instance.param("mu").pow(5) == y_instance.field.one()) return Stratum::ExtraNode;
  return Stratum::Generic;
}

LinearChange cubics_coordinate_change(const FieldElement& xi3) {
  const Field& f = xi3.field();
  if (xi3.is_zero() || f.multiplicative_order(xi3.index()) != 3)
    throw Error(ErrorCode::kInvalidArgument, "xi3 must have exact order 3");
  const Index z = xi3.index();
  const Index z2 = f.mul(z, z);
  const std::array<std::array<Index, 3>, 3> block{{{1, 1, 1}, {1, z, z2}, {1, z2, z}}};
  FieldMatrix m(f, 6, 6);
  for (std::size_t b = 0; b < 2; ++b)
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t j = 0; j < 3; ++j) m(3 * b + i, 3 * b + j) = block[i][j];
  return LinearChange(std::move(m));
}

CoordinateChangeCheck check_coordinate_change(const FieldElement& lambda) {
  const Field& f = lambda.field();
  if (lambda.is_zero()) throw Error(ErrorCode::kZeroDenominator, "lambda = 0");
  const auto xi3 = primitive_root_of_unity(f, 3);
  if (!xi3) throw Error(ErrorCode::kRootOfUnityUnavailable, "no primitive cube root of unity in " + f.name());

  const FamilyInstance w = cubics_w(lambda);
  const LinearChange change = cubics_coordinate_change(*xi3);
  const FieldPoly first = substitute(w.system.polys[0], change);
  const FieldPoly second = substitute(w.system.polys[1], change);

  const FieldCoeffs ring{f};
  auto x = [&ring](std::size_t i) { return FieldPoly::variable(ring, 6, i); };
  auto cube_form = [&](std::size_t a) {
    return x(a).pow(3) + x(a + 1).pow(3) + x(a + 2).pow(3) - (x(a) * x(a + 1) * x(a + 2)).scaled(f.from_int(3));
  };
  const Index lam3 = lambda.pow(3).index();
  const Index c27 = f.from_int(27);
  const FieldPoly expected_first = (x(0).pow(3) - cube_form(3).scaled(lam3)).scaled(c27);
  const FieldPoly expected_second = (x(3).pow(3) - cube_form(0).scaled(lam3)).scaled(c27);

  const Index nu = f.inv(lam3);
  const Index scale = f.neg(f.mul(c27, lam3));
  const FieldPoly nu_first = x(3).pow(3) + x(4).pow(3) + x(5).pow(3) - x(0).pow(3).scaled(nu) -
                             (x(3) * x(4) * x(5)).scaled(f.from_int(3));
  const FieldPoly nu_second = x(0).pow(3) + x(1).pow(3) + x(2).pow(3) - x(3).pow(3).scaled(nu) -
                              (x(0) * x(1) * x(2)).scaled(f.from_int(3));

  CoordinateChangeCheck out{*xi3};
  out.first_equation = poly_equal(first, expected_first);
  out.second_equation = poly_equal(second, expected_second);
  out.nu_form = poly_equal(first, nu_first.scaled(scale)) && poly_equal(second, nu_second.scaled(scale));
  return out;
}

bool verify_coordinate_change(const FieldElement& lambda) { return check_coordinate_change(lambda).passed(); }

WtildeImageCheck check_wtilde_images(const FieldElement& lambda, std::size_t samples, std::mt19937_64& rng) {
  const Field& f = lambda.field();
  if (lambda.is_zero()) throw Error(ErrorCode::kZeroDenominator, "lambda = 0");
  const auto xi3 = primitive_root_of_unity(f, 3);
  if (!xi3) throw Error(ErrorCode::kRootOfUnityUnavailable, "no primitive cube root of unity in " + f.name());
  // Old coordinates are the change applied to new ones, so new = inverse(old).
  const LinearChange to_new = cubics_coordinate_change(*xi3).inverse();
  const FamilyInstance target = cubics_wtilde_from_lambda(lambda);
  WtildeImageCheck out;
  for (const auto& pt : sample_points(cubics_w(lambda), samples, rng)) {
    ++out.samples;
    if (satisfies(target, apply_map(kPsi, apply_map(to_new, pt)))) ++out.on_wtilde;
  }
  return out;
}

std::vector<ProjectivePoint> sample_points(const FamilyInstance& instance, std::size_t count, std::mt19937_64& rng,
                                           std::uint64_t max_attempts) {
  const Field& f = instance.field;
  std::uniform_int_distribution<Index> coord(0, f.order() - 1);
  std::vector<ProjectivePoint> out;
  std::vector<Index> x(instance.ambient_dim + 1);
  for (std::uint64_t attempt = 0; attempt < max_attempts && out.size() < count; ++attempt) {
    for (auto& c : x) c = coord(rng);
    if (std::all_of(x.begin(), x.end(), [](Index c) { return c == 0; })) continue;
    if (satisfies(instance, x)) out.emplace_back(f, x);
  }
  if (out.size() < count) throw Error(ErrorCode::kInstanceTooLarge, "rejection sampling ran out of attempts");
  return out;
}

}  // namespace mql

#include "mql/mvpoly.hpp"

namespace mql {

FieldPoly reduce(const IntPoly& f, const Field& field) {
  const FieldCoeffs ring{field};
  std::vector<FieldPoly::Term> terms;
  terms.reserve(f.terms().size());
  for (const auto& t : f.terms()) terms.push_back({t.exponents, ring.from_int(t.coeff)});
  return FieldPoly(ring, f.nvars(), std::move(terms));
}

FieldPoly specialize(const IntPoly& tmpl, std::size_t keep, std::span<const FieldElement> params) {
  if (keep + params.size() != tmpl.nvars())
    throw Error(ErrorCode::kDimensionMismatch, "template expects " + std::to_string(tmpl.nvars() - keep) + " parameters");
  if (params.empty()) throw Error(ErrorCode::kInvalidArgument, "specialize needs at least one parameter for the field");
  const Field& field = params.front().field();
  for (const auto& p : params)
    if (!(p.field() == field)) throw Error(ErrorCode::kFieldMismatch, "template parameters");
  const FieldCoeffs ring{field};
  std::vector<FieldPoly::Term> terms;
  terms.reserve(tmpl.terms().size());
  for (const auto& t : tmpl.terms()) {
    Index c = ring.from_int(t.coeff);
    for (std::size_t j = 0; j < params.size(); ++j) c = field.mul(c, field.pow(params[j].index(), t.exponents[keep + j]));
    terms.push_back({Monomial(t.exponents.begin(), t.exponents.begin() + static_cast<std::ptrdiff_t>(keep)), c});
  }
  return FieldPoly(ring, keep, std::move(terms));
}

namespace {

std::vector<Index> indices_in(const Field& field, std::span<const FieldElement> point) {
  std::vector<Index> idx;
  idx.reserve(point.size());
  for (const auto& x : point) {
    if (!(x.field() == field)) throw Error(ErrorCode::kFieldMismatch, "evaluation point field");
    idx.push_back(x.index());
  }
  return idx;
}

}  // namespace

FieldElement eval(const FieldPoly& f, std::span<const FieldElement> point) {
  const Field& field = f.ring().field;
  const auto idx = indices_in(field, point);
  return {field, eval(f, std::span<const Index>(idx))};
}

FieldElement eval(const IntPoly& f, std::span<const FieldElement> point) {
  if (point.size() != f.nvars()) throw Error(ErrorCode::kDimensionMismatch, "evaluation point length");
  if (point.empty()) throw Error(ErrorCode::kInvalidArgument, "cannot infer field from an empty point");
  return eval(reduce(f, point.front().field()), point);
}

}  // namespace mql

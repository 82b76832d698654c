#include "mql/projective.hpp"

namespace mql {

void normalize(const Field& field, std::vector<Index>& coords) {
  auto lead = std::find_if(coords.begin(), coords.end(), [](Index c) { return c != Field::kZero; });
  if (lead == coords.end()) throw Error(ErrorCode::kInvalidArgument, "zero vector is not a projective point");
  if (*lead == Field::kOne) return;
  const Index s = field.inv(*lead);
  for (auto it = lead; it != coords.end(); ++it) *it = field.mul(*it, s);
}

ProjectivePoint::ProjectivePoint(Field field, std::vector<Index> coords)
    : field_(std::move(field)), coords_(std::move(coords)) {
  for (const auto c : coords_)
    if (c >= field_.order()) throw Error(ErrorCode::kInvalidArgument, "coordinate index out of range");
  normalize(field_, coords_);
}

ProjectivePoint ProjectivePoint::from_ints(const Field& field, std::initializer_list<long long> coords) {
  std::vector<Index> idx;
  idx.reserve(coords.size());
  for (const auto c : coords) idx.push_back(field.from_int(c));
  return {field, std::move(idx)};
}

ProjectivePoint ProjectivePoint::from_elements(std::span<const FieldElement> coords) {
  if (coords.empty()) throw Error(ErrorCode::kDimensionMismatch, "empty point");
  const Field& field = coords.front().field();
  std::vector<Index> idx;
  idx.reserve(coords.size());
  for (const auto& c : coords) {
    if (!(c.field() == field)) throw Error(ErrorCode::kFieldMismatch, "point coordinates");
    idx.push_back(c.index());
  }
  return {field, std::move(idx)};
}

std::vector<FieldElement> ProjectivePoint::elements() const {
  std::vector<FieldElement> out;
  out.reserve(coords_.size());
  for (const auto c : coords_) out.emplace_back(field_, c);
  return out;
}

std::size_t ProjectivePoint::nonzero_count() const {
  return static_cast<std::size_t>(std::count_if(coords_.begin(), coords_.end(), [](Index c) { return c != 0; }));
}

std::string ProjectivePoint::to_string() const {
  std::string out = "(";
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) out += ':';
    out += field_.format(coords_[i]);
  }
  return out + ")";
}

std::uint64_t projective_point_count(std::uint64_t q, std::size_t n) {
  std::uint64_t total = 0;
  std::uint64_t power = 1;
  for (std::size_t i = 0; i <= n; ++i) {
    total += power;
    power *= q;
  }
  return total;
}

}  // namespace mql

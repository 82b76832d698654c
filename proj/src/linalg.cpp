#include "mql/linalg.hpp"

#include <utility>

namespace mql {

FieldMatrix FieldMatrix::identity(const Field& field, std::size_t n) {
  FieldMatrix m(field, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = Field::kOne;
  return m;
}

namespace {

// Row-reduces in place and returns (rank, determinant sign/scale product).
struct Elimination {
  std::size_t rank = 0;
  Index det = Field::kOne;
};

Elimination eliminate(FieldMatrix& m, FieldMatrix* companion) {
  const Field& f = m.field();
  Elimination out;
  std::size_t row = 0;
  for (std::size_t col = 0; col < m.cols() && row < m.rows(); ++col) {
    std::size_t pivot = row;
    while (pivot < m.rows() && m(pivot, col) == Field::kZero) ++pivot;
    if (pivot == m.rows()) {
      out.det = Field::kZero;
      continue;
    }
    if (pivot != row) {
      for (std::size_t c = 0; c < m.cols(); ++c) std::swap(m(pivot, c), m(row, c));
      if (companion)
        for (std::size_t c = 0; c < companion->cols(); ++c) std::swap((*companion)(pivot, c), (*companion)(row, c));
      out.det = f.neg(out.det);
    }
    const Index lead = m(row, col);
    out.det = f.mul(out.det, lead);
    const Index lead_inv = f.inv(lead);
    for (std::size_t c = 0; c < m.cols(); ++c) m(row, c) = f.mul(m(row, c), lead_inv);
    if (companion)
      for (std::size_t c = 0; c < companion->cols(); ++c) (*companion)(row, c) = f.mul((*companion)(row, c), lead_inv);
    for (std::size_t r = 0; r < m.rows(); ++r) {
      if (r == row || m(r, col) == Field::kZero) continue;
      const Index factor = m(r, col);
      for (std::size_t c = 0; c < m.cols(); ++c) m(r, c) = f.sub(m(r, c), f.mul(factor, m(row, c)));
      if (companion)
        for (std::size_t c = 0; c < companion->cols(); ++c)
          (*companion)(r, c) = f.sub((*companion)(r, c), f.mul(factor, (*companion)(row, c)));
    }
    ++row;
  }
  out.rank = row;
  if (out.rank < m.rows()) out.det = Field::kZero;
  return out;
}

}  // namespace

std::size_t FieldMatrix::rank() const {
  FieldMatrix copy = *this;
  return eliminate(copy, nullptr).rank;
}

Index FieldMatrix::determinant() const {
  if (rows_ != cols_) throw Error(ErrorCode::kDimensionMismatch, "determinant of a non-square matrix");
  FieldMatrix copy = *this;
  return eliminate(copy, nullptr).det;
}

std::optional<FieldMatrix> FieldMatrix::inverse() const {
  if (rows_ != cols_) throw Error(ErrorCode::kDimensionMismatch, "inverse of a non-square matrix");
  FieldMatrix copy = *this;
  FieldMatrix inv = identity(field_, rows_);
  if (eliminate(copy, &inv).rank < rows_) return std::nullopt;
  return inv;
}

std::vector<Index> FieldMatrix::apply(const std::vector<Index>& v) const {
  if (v.size() != cols_) throw Error(ErrorCode::kDimensionMismatch, "matrix-vector product");
  std::vector<Index> out(rows_, Field::kZero);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) out[r] = field_.add(out[r], field_.mul((*this)(r, c), v[c]));
  return out;
}

FieldMatrix FieldMatrix::operator*(const FieldMatrix& o) const {
  if (cols_ != o.rows_) throw Error(ErrorCode::kDimensionMismatch, "matrix product");
  if (!(field_ == o.field_)) throw Error(ErrorCode::kFieldMismatch, "matrix product");
  FieldMatrix out(field_, rows_, o.cols_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t k = 0; k < cols_; ++k) {
      const Index a = (*this)(r, k);
      if (a == Field::kZero) continue;
      for (std::size_t c = 0; c < o.cols_; ++c) out(r, c) = field_.add(out(r, c), field_.mul(a, o(k, c)));
    }
  return out;
}

}  // namespace mql

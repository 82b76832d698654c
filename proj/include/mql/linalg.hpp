#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "mql/ffield.hpp"

namespace mql {

// Dense row-major matrix over a finite field, entries stored as indices.
class FieldMatrix {
 public:
  FieldMatrix(Field field, std::size_t rows, std::size_t cols)
      : field_(std::move(field)), rows_(rows), cols_(cols), data_(rows * cols, Field::kZero) {}

  static FieldMatrix identity(const Field& field, std::size_t n);

  const Field& field() const noexcept { return field_; }
  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }

  Index& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  Index operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::size_t rank() const;
  Index determinant() const;
  std::optional<FieldMatrix> inverse() const;

  std::vector<Index> apply(const std::vector<Index>& v) const;
  FieldMatrix operator*(const FieldMatrix& o) const;
  friend bool operator==(const FieldMatrix& a, const FieldMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_ && a.field_ == b.field_;
  }

 private:
  Field field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Index> data_;
};

}  // namespace mql

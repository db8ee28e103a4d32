#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "permrf/gf_core.hpp"

namespace permrf {

/// Dense matrix over the base field F_q of a tower, entries stored as encodings.
class FqMatrix {
 public:
  FqMatrix(const FieldTower& tower, std::size_t rows, std::size_t cols);

  static FqMatrix identity(const FieldTower& tower, std::size_t n);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  const FieldTower& tower() const noexcept { return *tower_; }

  Coeff operator()(std::size_t r, std::size_t c) const { return a_[r * cols_ + c]; }
  Coeff& operator()(std::size_t r, std::size_t c) { return a_[r * cols_ + c]; }

  std::vector<Coeff> column(std::size_t c) const;
  void set_column(std::size_t c, std::span<const Coeff> values);

  FqMatrix operator*(const FqMatrix& rhs) const;
  std::vector<Coeff> apply(std::span<const Coeff> v) const;
  FqMatrix transpose() const;

  /// Reduced row echelon form; `pivots` receives the pivot column of each nonzero row.
  FqMatrix rref(std::vector<std::size_t>* pivots = nullptr) const;
  /// Reduced column echelon form (transpose of the rref of the transpose).
  FqMatrix column_echelon() const;

  std::size_t rank() const;
  Coeff determinant() const;
  std::optional<FqMatrix> inverse() const;
  /// Basis of the right null space, one vector per free column.
  std::vector<std::vector<Coeff>> kernel_basis() const;

  bool is_zero() const noexcept;

  friend bool operator==(const FqMatrix& a, const FqMatrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

 private:
  const FieldTower* tower_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Coeff> a_;
};

}  // namespace permrf

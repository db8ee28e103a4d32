#include "permrf/fq_matrix.hpp"

#include <utility>

namespace permrf {

FqMatrix::FqMatrix(const FieldTower& tower, std::size_t rows, std::size_t cols)
    : tower_(&tower), rows_(rows), cols_(cols), a_(rows * cols, 0) {}

FqMatrix FqMatrix::identity(const FieldTower& tower, std::size_t n) {
  FqMatrix m(tower, n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

std::vector<Coeff> FqMatrix::column(std::size_t c) const {
  std::vector<Coeff> out(rows_);
  for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
  return out;
}

void FqMatrix::set_column(std::size_t c, std::span<const Coeff> values) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = values[r];
}

FqMatrix FqMatrix::operator*(const FqMatrix& rhs) const {
  if (cols_ != rhs.rows_) throw Error(Errc::level_mismatch, "matrix shapes do not match");
  const FieldTower& t = *tower_;
  FqMatrix out(t, rows_, rhs.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      const Coeff a = (*this)(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < rhs.cols_; ++j) {
        out(i, j) = t.base_add(out(i, j), t.base_mul(a, rhs(k, j)));
      }
    }
  }
  return out;
}

std::vector<Coeff> FqMatrix::apply(std::span<const Coeff> v) const {
  const FieldTower& t = *tower_;
  std::vector<Coeff> out(rows_, 0);
  for (std::size_t r = 0; r < rows_; ++r) {
    Coeff acc = 0;
    for (std::size_t c = 0; c < cols_; ++c) acc = t.base_add(acc, t.base_mul((*this)(r, c), v[c]));
    out[r] = acc;
  }
  return out;
}

FqMatrix FqMatrix::transpose() const {
  FqMatrix out(*tower_, cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r) {
    for (std::size_t c = 0; c < cols_; ++c) out(c, r) = (*this)(r, c);
  }
  return out;
}

FqMatrix FqMatrix::rref(std::vector<std::size_t>* pivots) const {
  const FieldTower& t = *tower_;
  FqMatrix m = *this;
  if (pivots) pivots->clear();
  std::size_t row = 0;
  for (std::size_t col = 0; col < cols_ && row < rows_; ++col) {
    std::size_t sel = row;
    while (sel < rows_ && m(sel, col) == 0) ++sel;
    if (sel == rows_) continue;
    if (sel != row) {
      for (std::size_t c = 0; c < cols_; ++c) std::swap(m(sel, c), m(row, c));
    }
    const Coeff inv = t.base_inv(m(row, col));
    for (std::size_t c = 0; c < cols_; ++c) m(row, c) = t.base_mul(m(row, c), inv);
    for (std::size_t r = 0; r < rows_; ++r) {
      if (r == row || m(r, col) == 0) continue;
      const Coeff f = m(r, col);
      for (std::size_t c = 0; c < cols_; ++c) {
        m(r, c) = t.base_sub(m(r, c), t.base_mul(f, m(row, c)));
      }
    }
    if (pivots) pivots->push_back(col);
    ++row;
  }
  return m;
}

FqMatrix FqMatrix::column_echelon() const { return transpose().rref().transpose(); }

std::size_t FqMatrix::rank() const {
  std::vector<std::size_t> pivots;
  rref(&pivots);
  return pivots.size();
}

Coeff FqMatrix::determinant() const {
  if (rows_ != cols_) throw Error(Errc::level_mismatch, "determinant of a non-square matrix");
  const FieldTower& t = *tower_;
  FqMatrix m = *this;
  Coeff det = 1;
  for (std::size_t col = 0; col < cols_; ++col) {
    std::size_t sel = col;
    while (sel < rows_ && m(sel, col) == 0) ++sel;
    if (sel == rows_) return 0;
    if (sel != col) {
      for (std::size_t c = 0; c < cols_; ++c) std::swap(m(sel, c), m(col, c));
      det = t.base_neg(det);
    }
    det = t.base_mul(det, m(col, col));
    const Coeff inv = t.base_inv(m(col, col));
    for (std::size_t r = col + 1; r < rows_; ++r) {
      if (m(r, col) == 0) continue;
      const Coeff f = t.base_mul(m(r, col), inv);
      for (std::size_t c = col; c < cols_; ++c) {
        m(r, c) = t.base_sub(m(r, c), t.base_mul(f, m(col, c)));
      }
    }
  }
  return det;
}

std::optional<FqMatrix> FqMatrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  const std::size_t n = rows_;
  FqMatrix aug(*tower_, n, 2 * n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) aug(r, c) = (*this)(r, c);
    aug(r, n + r) = 1;
  }
  std::vector<std::size_t> pivots;
  const FqMatrix red = aug.rref(&pivots);
  if (pivots.size() < n || pivots[n - 1] != n - 1) return std::nullopt;
  FqMatrix out(*tower_, n, n);
  for (std::size_t r = 0; r < n; ++r) {
    for (std::size_t c = 0; c < n; ++c) out(r, c) = red(r, n + c);
  }
  return out;
}

std::vector<std::vector<Coeff>> FqMatrix::kernel_basis() const {
  const FieldTower& t = *tower_;
  std::vector<std::size_t> pivots;
  const FqMatrix red = rref(&pivots);
  std::vector<bool> is_pivot(cols_, false);
  for (auto p : pivots) is_pivot[p] = true;
  std::vector<std::vector<Coeff>> basis;
  for (std::size_t free = 0; free < cols_; ++free) {
    if (is_pivot[free]) continue;
    std::vector<Coeff> v(cols_, 0);
    v[free] = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) v[pivots[r]] = t.base_neg(red(r, free));
    basis.push_back(std::move(v));
  }
  return basis;
}

bool FqMatrix::is_zero() const noexcept {
  for (auto v : a_) {
    if (v != 0) return false;
  }
  return true;
}

}  // namespace permrf

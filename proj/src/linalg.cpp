#include "titskit/linalg.hpp"

#include <stdexcept>
#include <utility>

namespace titskit::linalg {

Echelon row_reduce(Matrix rows, std::size_t cols) {
  Echelon out;
  std::size_t lead_row = 0;
  for (std::size_t col = 0; col < cols && lead_row < rows.size(); ++col) {
    std::size_t pivot = lead_row;
    while (pivot < rows.size() && rows[pivot][col].is_zero()) ++pivot;
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[lead_row]);
    const Rational inv = 1 / rows[lead_row][col];
    for (auto& x : rows[lead_row]) x *= inv;
    for (std::size_t r = 0; r < rows.size(); ++r) {
      if (r == lead_row || rows[r][col].is_zero()) continue;
      const Rational factor = rows[r][col];
      for (std::size_t c = col; c < cols; ++c) {
        if (!rows[lead_row][c].is_zero()) rows[r][c] -= factor * rows[lead_row][c];
      }
    }
    out.pivots.push_back(col);
    ++lead_row;
  }
  rows.resize(lead_row);
  out.rows = std::move(rows);
  return out;
}

std::size_t rank(const Matrix& rows, std::size_t cols) {
  return row_reduce(rows, cols).pivots.size();
}

Matrix nullspace(const Matrix& rows, std::size_t cols) {
  const Echelon e = row_reduce(rows, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  Matrix basis;
  for (std::size_t free = 0; free < cols; ++free) {
    if (is_pivot[free]) continue;
    RationalVector v(cols, Rational(0));
    v[free] = 1;
    for (std::size_t r = 0; r < e.rows.size(); ++r) v[e.pivots[r]] = -e.rows[r][free];
    basis.push_back(std::move(v));
  }
  return basis;
}

bool in_row_space(const Matrix& rows, const RationalVector& v) {
  const std::size_t cols = v.size();
  Matrix extended = rows;
  const std::size_t before = rank(rows, cols);
  extended.push_back(v);
  return rank(extended, cols) == before;
}

Matrix inverse(const Matrix& square) {
  const std::size_t n = square.size();
  Matrix aug(n, RationalVector(2 * n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug[i][j] = square[i][j];
    aug[i][n + i] = 1;
  }
  const Echelon e = row_reduce(std::move(aug), 2 * n);
  if (e.pivots.size() < n || e.pivots[n - 1] != n - 1) {
    throw std::domain_error("singular matrix");
  }
  Matrix inv(n, RationalVector(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) inv[i][j] = e.rows[i][n + j];
  }
  return inv;
}

Matrix transpose(const Matrix& m, std::size_t cols) {
  Matrix t(cols, RationalVector(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
  }
  return t;
}

Matrix multiply(const Matrix& a, const Matrix& b, std::size_t b_cols) {
  Matrix out(a.size(), RationalVector(b_cols, Rational(0)));
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k].is_zero()) continue;
      for (std::size_t j = 0; j < b_cols; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

RationalVector apply(const Matrix& m, const RationalVector& v) {
  RationalVector out;
  out.reserve(m.size());
  for (const auto& row : m) out.push_back(dot(row, v));
  return out;
}

Matrix projector_onto(const Matrix& basis, std::size_t dim) {
  if (basis.empty()) return Matrix(dim, RationalVector(dim, Rational(0)));
  // P = B^T (B B^T)^{-1} B with the basis as the rows of B.
  const Matrix bt = transpose(basis, dim);
  const Matrix gram = multiply(basis, bt, basis.size());
  const Matrix gram_inv = inverse(gram);
  return multiply(multiply(bt, gram_inv, basis.size()), basis, dim);
}

}  // namespace titskit::linalg

#pragma once

#include "titskit/rational.hpp"

#include <cstddef>
#include <vector>

// Small dense exact linear algebra over the rationals. Matrices are stored
// row-major as a vector of rows; every row of a matrix has the same length.
namespace titskit::linalg {

using Matrix = std::vector<RationalVector>;

struct Echelon {
  Matrix rows;                      // reduced row echelon form, zero rows dropped
  std::vector<std::size_t> pivots;  // pivot column of each row
};

Echelon row_reduce(Matrix rows, std::size_t cols);

std::size_t rank(const Matrix& rows, std::size_t cols);

/// Basis of {x : rows * x = 0}.
Matrix nullspace(const Matrix& rows, std::size_t cols);

/// True iff v is a linear combination of the given rows.
bool in_row_space(const Matrix& rows, const RationalVector& v);

/// Inverse of a nonsingular square matrix; throws std::domain_error if singular.
Matrix inverse(const Matrix& square);

Matrix transpose(const Matrix& m, std::size_t cols);

Matrix multiply(const Matrix& a, const Matrix& b, std::size_t b_cols);

RationalVector apply(const Matrix& m, const RationalVector& v);

/// Orthogonal projector onto the subspace spanned by `basis` (rows).
/// Returns the zero matrix when the basis is empty.
Matrix projector_onto(const Matrix& basis, std::size_t dim);

}  // namespace titskit::linalg

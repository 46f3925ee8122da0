#pragma once

#include <cstddef>
#include <vector>

#include "confstab/sparse_matrix.hpp"

namespace confstab {

using DenseBigMatrix = std::vector<std::vector<BigInt>>;

/// Nonzero diagonal of the Smith normal form: d_1 | d_2 | ... | d_r, r = rank.
///
/// Sparse column reduction with unit pivots peeled off; the (usually empty) residual
/// is finished by a dense Smith form. Exact: int64 with overflow detection, redone in
/// GMP integers on overflow.
std::vector<BigInt> smith_normal_form(const SparseIntMatrix& m);

/// Dense Smith form with unimodular transforms, U * M * V = D. Intended for small
/// matrices; cost is cubic in the dimensions.
struct SmithDecomposition {
  std::vector<BigInt> divisors;
  DenseBigMatrix U;
  DenseBigMatrix D;
  DenseBigMatrix V;
};
SmithDecomposition smith_normal_form_with_transforms(const DenseBigMatrix& m);
SmithDecomposition smith_normal_form_with_transforms(const SparseIntMatrix& m);

/// Divisors only, dense algorithm.
std::vector<BigInt> dense_smith_divisors(DenseBigMatrix m);

/// Rank over Q by fraction-free row elimination (rows kept primitive). Shares no
/// code with the column reducer and serves as its cross-check.
std::size_t rational_rank(const SparseIntMatrix& m);

DenseBigMatrix dense_multiply(const DenseBigMatrix& a, const DenseBigMatrix& b);
DenseBigMatrix to_dense_big(const SparseIntMatrix& m);
/// Determinant of a square matrix (Bareiss).
BigInt determinant(DenseBigMatrix m);

}  // namespace confstab

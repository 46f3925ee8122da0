#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <gmpxx.h>

namespace confstab {

using BigInt = mpz_class;
using Rational = mpq_class;

/// Sparse integer vector: (index, value) pairs, strictly increasing indices, no zeros.
using Chain = std::vector<std::pair<int, std::int64_t>>;

struct Triplet {
  int row = 0;
  int col = 0;
  std::int64_t value = 0;
  friend bool operator==(const Triplet&, const Triplet&) = default;
};

/// Column-major sparse integer matrix.
///
/// Stored entries fit in 64 bits (boundary matrices have entries +-1); every
/// elimination built on top of it promotes to arbitrary precision when needed.
class SparseIntMatrix {
 public:
  SparseIntMatrix() = default;
  SparseIntMatrix(int rows, int cols);

  /// Sums duplicate positions and drops zeros.
  static SparseIntMatrix from_triplets(int rows, int cols, const std::vector<Triplet>& triplets);
  static SparseIntMatrix from_dense(const std::vector<std::vector<std::int64_t>>& rows);
  static SparseIntMatrix from_columns(int rows, std::vector<Chain> columns);

  [[nodiscard]] int rows() const { return rows_; }
  [[nodiscard]] int cols() const { return static_cast<int>(columns_.size()); }
  [[nodiscard]] const Chain& column(int j) const { return columns_.at(static_cast<std::size_t>(j)); }
  [[nodiscard]] const std::vector<Chain>& columns() const { return columns_; }
  [[nodiscard]] std::size_t nnz() const;
  [[nodiscard]] std::int64_t at(int row, int col) const;

  /// Replaces column j; the chain must be sorted, zero-free and within row bounds.
  void set_column(int j, Chain c);

  [[nodiscard]] std::vector<Triplet> to_triplets() const;
  [[nodiscard]] std::vector<std::vector<std::int64_t>> to_dense() const;
  [[nodiscard]] SparseIntMatrix transpose() const;
  /// Matrix-vector product; throws ArithmeticOverflow if a result leaves 64 bits.
  [[nodiscard]] Chain apply(const Chain& x) const;
  /// this * other.
  [[nodiscard]] SparseIntMatrix multiply(const SparseIntMatrix& other) const;
  [[nodiscard]] bool is_zero() const { return nnz() == 0; }

  /// "rows cols nnz" header followed by one "row col value" line per entry.
  [[nodiscard]] std::string to_triplet_text() const;

  friend bool operator==(const SparseIntMatrix&, const SparseIntMatrix&) = default;

 private:
  int rows_ = 0;
  std::vector<Chain> columns_;
};

// Chain arithmetic.
Chain chain_add(const Chain& a, const Chain& b, std::int64_t factor = 1);  // a + factor * b
Chain chain_scale(const Chain& a, std::int64_t factor);
Chain chain_from_dense(const std::vector<std::int64_t>& v);
std::vector<std::int64_t> chain_to_dense(const Chain& c, int size);
/// Sorts by index, sums duplicates and drops zeros.
Chain chain_normalize(std::vector<std::pair<int, std::int64_t>> entries);

}  // namespace confstab

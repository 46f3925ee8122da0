#include "confstab/smith.hpp"

#include <algorithm>
#include <map>

#include "confstab/detail/column_reduction.hpp"
#include "confstab/errors.hpp"

namespace confstab {

namespace {

using detail::ColumnReducer;
using detail::Vec;

class DenseSmith {
 public:
  DenseSmith(DenseBigMatrix m, bool track) : d_(std::move(m)), track_(track) {
    rows_ = d_.size();
    cols_ = rows_ == 0 ? 0 : d_[0].size();
    if (track_) {
      u_ = identity(rows_);
      v_ = identity(cols_);
    }
  }

  SmithDecomposition run() {
    const std::size_t steps = std::min(rows_, cols_);
    std::size_t t = 0;
    for (; t < steps; ++t) {
      std::size_t pi = 0, pj = 0;
      if (!find_min(t, pi, pj)) break;
      swap_rows(t, pi);
      swap_cols(t, pj);
      while (true) {
        bool clean = true;
        for (std::size_t i = t + 1; i < rows_; ++i) {
          if (d_[i][t] == 0) continue;
          BigInt q;
          mpz_tdiv_q(q.get_mpz_t(), d_[i][t].get_mpz_t(), d_[t][t].get_mpz_t());
          add_row(i, t, -q);
          if (d_[i][t] != 0) clean = false;
        }
        for (std::size_t j = t + 1; j < cols_; ++j) {
          if (d_[t][j] == 0) continue;
          BigInt q;
          mpz_tdiv_q(q.get_mpz_t(), d_[t][j].get_mpz_t(), d_[t][t].get_mpz_t());
          add_col(j, t, -q);
          if (d_[t][j] != 0) clean = false;
        }
        if (!clean) {
          // Remainders are smaller than the pivot: move the smallest one in.
          std::size_t bi = t, bj = t;
          for (std::size_t i = t + 1; i < rows_; ++i) {
            if (d_[i][t] != 0 && (bi == t && bj == t ? true : abs(d_[i][t]) < abs(d_[bi][bj]))) bi = i, bj = t;
          }
          for (std::size_t j = t + 1; j < cols_; ++j) {
            if (d_[t][j] != 0 && (bi == t && bj == t ? true : abs(d_[t][j]) < abs(d_[bi][bj]))) bi = t, bj = j;
          }
          swap_rows(t, bi);
          swap_cols(t, bj);
          continue;
        }
        bool fixed = false;
        for (std::size_t i = t + 1; i < rows_ && !fixed; ++i) {
          for (std::size_t j = t + 1; j < cols_; ++j) {
            if (mpz_divisible_p(d_[i][j].get_mpz_t(), d_[t][t].get_mpz_t()) == 0) {
              add_row(t, i, BigInt(1));
              fixed = true;
              break;
            }
          }
        }
        if (!fixed) break;
      }
      if (d_[t][t] < 0) negate_row(t);
    }
    SmithDecomposition out;
    for (std::size_t i = 0; i < t; ++i) out.divisors.push_back(d_[i][i]);
    out.D = std::move(d_);
    out.U = std::move(u_);
    out.V = std::move(v_);
    return out;
  }

 private:
  static DenseBigMatrix identity(std::size_t n) {
    DenseBigMatrix m(n, std::vector<BigInt>(n, 0));
    for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
    return m;
  }

  bool find_min(std::size_t t, std::size_t& pi, std::size_t& pj) const {
    bool found = false;
    for (std::size_t i = t; i < rows_; ++i) {
      for (std::size_t j = t; j < cols_; ++j) {
        if (d_[i][j] == 0) continue;
        if (!found || abs(d_[i][j]) < abs(d_[pi][pj])) {
          pi = i;
          pj = j;
          found = true;
        }
      }
    }
    return found;
  }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    std::swap(d_[a], d_[b]);
    if (track_) std::swap(u_[a], u_[b]);
  }

  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (auto& row : d_) std::swap(row[a], row[b]);
    if (track_) {
      for (auto& row : v_) std::swap(row[a], row[b]);
    }
  }

  // row dst += f * row src
  void add_row(std::size_t dst, std::size_t src, const BigInt& f) {
    for (std::size_t j = 0; j < cols_; ++j) d_[dst][j] += f * d_[src][j];
    if (track_) {
      for (std::size_t j = 0; j < rows_; ++j) u_[dst][j] += f * u_[src][j];
    }
  }

  // col dst += f * col src
  void add_col(std::size_t dst, std::size_t src, const BigInt& f) {
    for (std::size_t i = 0; i < rows_; ++i) d_[i][dst] += f * d_[i][src];
    if (track_) {
      for (std::size_t i = 0; i < cols_; ++i) v_[i][dst] += f * v_[i][src];
    }
  }

  void negate_row(std::size_t i) {
    for (auto& x : d_[i]) x = -x;
    if (track_) {
      for (auto& x : u_[i]) x = -x;
    }
  }

  DenseBigMatrix d_, u_, v_;
  bool track_;
  std::size_t rows_ = 0, cols_ = 0;
};

template <class T>
std::vector<BigInt> sparse_divisors(const SparseIntMatrix& m) {
  ColumnReducer<T> reducer(m.rows(), false);
  for (int j = 0; j < m.cols(); ++j) reducer.insert(detail::from_chain<T>(m.column(j)), j);
  std::vector<BigInt> out;
  std::size_t units = 0;
  for (const auto& p : reducer.pivots()) {
    if (detail::Num<T>::is_unit(p.back().second)) ++units;
  }
  out.assign(units, BigInt(1));
  if (units == reducer.rank()) return out;

  // Dense Smith form of the residual block, restricted to the rows it touches.
  const auto residual = reducer.residual_columns();
  std::map<int, std::size_t> row_index;
  for (const auto& col : residual) {
    for (const auto& [r, v] : col) row_index.emplace(r, 0);
  }
  std::size_t next = 0;
  for (auto& [r, idx] : row_index) idx = next++;
  DenseBigMatrix dense(row_index.size(), std::vector<BigInt>(residual.size(), 0));
  for (std::size_t j = 0; j < residual.size(); ++j) {
    for (const auto& [r, v] : residual[j]) dense[row_index[r]][j] = detail::Num<T>::to_big(v);
  }
  for (BigInt& d : dense_smith_divisors(std::move(dense))) out.push_back(std::move(d));
  return out;
}

}  // namespace

std::vector<BigInt> smith_normal_form(const SparseIntMatrix& m) {
  try {
    return sparse_divisors<std::int64_t>(m);
  } catch (const ArithmeticOverflow&) {
    return sparse_divisors<BigInt>(m);
  }
}

SmithDecomposition smith_normal_form_with_transforms(const DenseBigMatrix& m) {
  return DenseSmith(m, true).run();
}

SmithDecomposition smith_normal_form_with_transforms(const SparseIntMatrix& m) {
  return smith_normal_form_with_transforms(to_dense_big(m));
}

std::vector<BigInt> dense_smith_divisors(DenseBigMatrix m) { return DenseSmith(std::move(m), false).run().divisors; }

std::size_t rational_rank(const SparseIntMatrix& m) {
  // Rows as sparse vectors; pivots keyed by leading (smallest) column.
  std::vector<Vec<BigInt>> rows(static_cast<std::size_t>(m.rows()));
  for (int j = 0; j < m.cols(); ++j) {
    for (const auto& [i, v] : m.column(j)) rows[static_cast<std::size_t>(i)].emplace_back(j, BigInt(static_cast<long>(v)));
  }
  std::map<int, Vec<BigInt>> pivots;
  for (auto& row : rows) {
    while (!row.empty()) {
      const int lead = row.front().first;
      auto it = pivots.find(lead);
      if (it == pivots.end()) {
        pivots.emplace(lead, std::move(row));
        break;
      }
      const BigInt a = it->second.front().second;
      const BigInt b = row.front().second;
      row = detail::combine(a, row, BigInt(-b), it->second);
      if (row.empty()) break;
      BigInt content = 0;
      for (const auto& [c, v] : row) content = gcd(content, v);
      if (content > 1) {
        for (auto& [c, v] : row) v /= content;
      }
    }
  }
  return pivots.size();
}

DenseBigMatrix dense_multiply(const DenseBigMatrix& a, const DenseBigMatrix& b) {
  const std::size_t n = a.size();
  const std::size_t k = b.size();
  const std::size_t m = k == 0 ? 0 : b[0].size();
  DenseBigMatrix out(n, std::vector<BigInt>(m, 0));
  for (std::size_t i = 0; i < n; ++i) {
    if (a[i].size() != k) throw InvalidArgument("dense_multiply: dimension mismatch");
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  }
  return out;
}

DenseBigMatrix to_dense_big(const SparseIntMatrix& m) {
  DenseBigMatrix out(static_cast<std::size_t>(m.rows()), std::vector<BigInt>(static_cast<std::size_t>(m.cols()), 0));
  for (int j = 0; j < m.cols(); ++j) {
    for (const auto& [i, v] : m.column(j)) out[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = static_cast<long>(v);
  }
  return out;
}

BigInt determinant(DenseBigMatrix m) {
  const std::size_t n = m.size();
  for (const auto& row : m) {
    if (row.size() != n) throw InvalidArgument("determinant of a non-square matrix");
  }
  if (n == 0) return 1;
  BigInt sign = 1, prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (m[k][k] == 0) {
      std::size_t s = k + 1;
      while (s < n && m[s][k] == 0) ++s;
      if (s == n) return 0;
      std::swap(m[k], m[s]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
      }
    }
    prev = m[k][k];
  }
  return sign * m[n - 1][n - 1];
}

}  // namespace confstab

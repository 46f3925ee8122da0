#include "confstab/sparse_matrix.hpp"

#include <algorithm>
#include <sstream>

#include "confstab/errors.hpp"

namespace confstab {

namespace {

std::int64_t add_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("64-bit overflow in chain arithmetic");
  return r;
}

std::int64_t mul_checked(std::int64_t a, std::int64_t b) {
  std::int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("64-bit overflow in chain arithmetic");
  return r;
}

}  // namespace

SparseIntMatrix::SparseIntMatrix(int rows, int cols) : rows_(rows), columns_(static_cast<std::size_t>(cols)) {
  if (rows < 0 || cols < 0) throw InvalidArgument("negative matrix dimension");
}

SparseIntMatrix SparseIntMatrix::from_triplets(int rows, int cols, const std::vector<Triplet>& triplets) {
  SparseIntMatrix m(rows, cols);
  std::vector<std::vector<std::pair<int, std::int64_t>>> buckets(static_cast<std::size_t>(cols));
  for (const Triplet& t : triplets) {
    if (t.row < 0 || t.row >= rows || t.col < 0 || t.col >= cols) throw InvalidArgument("triplet out of range");
    buckets[static_cast<std::size_t>(t.col)].emplace_back(t.row, t.value);
  }
  for (int j = 0; j < cols; ++j) m.columns_[static_cast<std::size_t>(j)] = chain_normalize(std::move(buckets[static_cast<std::size_t>(j)]));
  return m;
}

SparseIntMatrix SparseIntMatrix::from_dense(const std::vector<std::vector<std::int64_t>>& rows) {
  const int r = static_cast<int>(rows.size());
  const int c = r == 0 ? 0 : static_cast<int>(rows[0].size());
  std::vector<Triplet> t;
  for (int i = 0; i < r; ++i) {
    if (static_cast<int>(rows[static_cast<std::size_t>(i)].size()) != c) throw InvalidArgument("ragged dense matrix");
    for (int j = 0; j < c; ++j) {
      const auto v = rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (v != 0) t.push_back({i, j, v});
    }
  }
  return from_triplets(r, c, t);
}

SparseIntMatrix SparseIntMatrix::from_columns(int rows, std::vector<Chain> columns) {
  SparseIntMatrix m(rows, 0);
  m.columns_.reserve(columns.size());
  for (auto& c : columns) {
    m.columns_.emplace_back();
    m.set_column(m.cols() - 1, std::move(c));
  }
  return m;
}

std::size_t SparseIntMatrix::nnz() const {
  std::size_t n = 0;
  for (const Chain& c : columns_) n += c.size();
  return n;
}

std::int64_t SparseIntMatrix::at(int row, int col) const {
  const Chain& c = column(col);
  auto it = std::lower_bound(c.begin(), c.end(), std::pair<int, std::int64_t>{row, INT64_MIN});
  return it != c.end() && it->first == row ? it->second : 0;
}

void SparseIntMatrix::set_column(int j, Chain c) {
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (c[i].first < 0 || c[i].first >= rows_ || c[i].second == 0 || (i > 0 && c[i - 1].first >= c[i].first)) {
      throw InvalidArgument("set_column: chain must be sorted, zero-free and in range");
    }
  }
  columns_.at(static_cast<std::size_t>(j)) = std::move(c);
}

std::vector<Triplet> SparseIntMatrix::to_triplets() const {
  std::vector<Triplet> out;
  out.reserve(nnz());
  for (int j = 0; j < cols(); ++j) {
    for (const auto& [i, v] : column(j)) out.push_back({i, j, v});
  }
  std::sort(out.begin(), out.end(), [](const Triplet& a, const Triplet& b) {
    return a.row != b.row ? a.row < b.row : a.col < b.col;
  });
  return out;
}

std::vector<std::vector<std::int64_t>> SparseIntMatrix::to_dense() const {
  std::vector<std::vector<std::int64_t>> d(static_cast<std::size_t>(rows_), std::vector<std::int64_t>(columns_.size(), 0));
  for (int j = 0; j < cols(); ++j) {
    for (const auto& [i, v] : column(j)) d[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = v;
  }
  return d;
}

SparseIntMatrix SparseIntMatrix::transpose() const {
  SparseIntMatrix t(cols(), rows_);
  for (int j = 0; j < cols(); ++j) {
    for (const auto& [i, v] : column(j)) t.columns_[static_cast<std::size_t>(i)].emplace_back(j, v);
  }
  return t;
}

Chain SparseIntMatrix::apply(const Chain& x) const {
  std::vector<std::pair<int, std::int64_t>> acc;
  for (const auto& [j, xv] : x) {
    if (j < 0 || j >= cols()) throw InvalidArgument("apply: vector index out of range");
    for (const auto& [i, v] : column(j)) acc.emplace_back(i, mul_checked(v, xv));
  }
  return chain_normalize(std::move(acc));
}

SparseIntMatrix SparseIntMatrix::multiply(const SparseIntMatrix& other) const {
  if (cols() != other.rows()) throw InvalidArgument("multiply: dimension mismatch");
  SparseIntMatrix out(rows_, other.cols());
  for (int j = 0; j < other.cols(); ++j) out.columns_[static_cast<std::size_t>(j)] = apply(other.column(j));
  return out;
}

std::string SparseIntMatrix::to_triplet_text() const {
  std::ostringstream out;
  out << rows_ << ' ' << cols() << ' ' << nnz() << '\n';
  for (const Triplet& t : to_triplets()) out << t.row << ' ' << t.col << ' ' << t.value << '\n';
  return out.str();
}

Chain chain_add(const Chain& a, const Chain& b, std::int64_t factor) {
  if (factor == 0) return a;
  Chain out;
  out.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      out.emplace_back(b[j].first, mul_checked(factor, b[j].second));
      ++j;
    } else {
      const std::int64_t v = add_checked(a[i].second, mul_checked(factor, b[j].second));
      if (v != 0) out.emplace_back(a[i].first, v);
      ++i;
      ++j;
    }
  }
  return out;
}

Chain chain_scale(const Chain& a, std::int64_t factor) {
  if (factor == 0) return {};
  Chain out(a);
  for (auto& [i, v] : out) v = mul_checked(v, factor);
  return out;
}

Chain chain_from_dense(const std::vector<std::int64_t>& v) {
  Chain out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) out.emplace_back(static_cast<int>(i), v[i]);
  }
  return out;
}

std::vector<std::int64_t> chain_to_dense(const Chain& c, int size) {
  std::vector<std::int64_t> out(static_cast<std::size_t>(size), 0);
  for (const auto& [i, v] : c) out.at(static_cast<std::size_t>(i)) = v;
  return out;
}

Chain chain_normalize(std::vector<std::pair<int, std::int64_t>> entries) {
  std::sort(entries.begin(), entries.end(), [](const auto& x, const auto& y) { return x.first < y.first; });
  Chain out;
  out.reserve(entries.size());
  for (const auto& [i, v] : entries) {
    if (!out.empty() && out.back().first == i) {
      out.back().second = add_checked(out.back().second, v);
      if (out.back().second == 0) out.pop_back();
    } else if (v != 0) {
      out.emplace_back(i, v);
    }
  }
  return out;
}

}  // namespace confstab

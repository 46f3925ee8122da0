#pragma once

// Integer column reduction shared by the Smith form, homology and generation checks.
// Templated on the scalar so that the int64 fast path can be rerun with GMP integers
// when an intermediate value overflows.

#include <algorithm>
#include <cstdint>
#include <utility>
#include <vector>

#include <gmpxx.h>

#include "confstab/errors.hpp"
#include "confstab/sparse_matrix.hpp"

namespace confstab::detail {

template <class T>
using Vec = std::vector<std::pair<int, T>>;

template <class T>
struct Num;

template <>
struct Num<std::int64_t> {
  static std::int64_t mul(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_mul_overflow(a, b, &r)) throw ArithmeticOverflow("int64 overflow");
    return r;
  }
  static std::int64_t add(std::int64_t a, std::int64_t b) {
    std::int64_t r;
    if (__builtin_add_overflow(a, b, &r)) throw ArithmeticOverflow("int64 overflow");
    return r;
  }
  static bool divides(std::int64_t d, std::int64_t x) { return d == 1 || d == -1 || x % d == 0; }
  static std::int64_t div(std::int64_t x, std::int64_t d) {
    if (d == -1 && x == INT64_MIN) throw ArithmeticOverflow("int64 overflow");
    return x / d;
  }
  static bool is_unit(std::int64_t x) { return x == 1 || x == -1; }
  static std::int64_t neg(std::int64_t x) { return mul(x, -1); }
  // Returns g = gcd(a, b) > 0 and s, t with s*a + t*b = g.
  static std::int64_t gcdext(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t) {
    BigInt g, bs, bt;
    mpz_gcdext(g.get_mpz_t(), bs.get_mpz_t(), bt.get_mpz_t(), BigInt(static_cast<long>(a)).get_mpz_t(),
               BigInt(static_cast<long>(b)).get_mpz_t());
    if (!bs.fits_slong_p() || !bt.fits_slong_p()) throw ArithmeticOverflow("int64 overflow");
    s = bs.get_si();
    t = bt.get_si();
    return g.get_si();
  }
  static BigInt to_big(std::int64_t x) { return BigInt(static_cast<long>(x)); }
  static std::int64_t from_int64(std::int64_t x) { return x; }
};

template <>
struct Num<BigInt> {
  static BigInt mul(const BigInt& a, const BigInt& b) { return a * b; }
  static BigInt add(const BigInt& a, const BigInt& b) { return a + b; }
  static bool divides(const BigInt& d, const BigInt& x) { return mpz_divisible_p(x.get_mpz_t(), d.get_mpz_t()) != 0; }
  static BigInt div(const BigInt& x, const BigInt& d) {
    BigInt q;
    mpz_divexact(q.get_mpz_t(), x.get_mpz_t(), d.get_mpz_t());
    return q;
  }
  static bool is_unit(const BigInt& x) { return x == 1 || x == -1; }
  static BigInt neg(const BigInt& x) { return -x; }
  static BigInt gcdext(const BigInt& a, const BigInt& b, BigInt& s, BigInt& t) {
    BigInt g;
    mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
    return g;
  }
  static BigInt to_big(const BigInt& x) { return x; }
  static BigInt from_int64(std::int64_t x) { return BigInt(static_cast<long>(x)); }
};

/// a*x + b*y for sorted sparse vectors.
template <class T>
Vec<T> combine(const T& a, const Vec<T>& x, const T& b, const Vec<T>& y) {
  using N = Num<T>;
  Vec<T> out;
  out.reserve(x.size() + y.size());
  std::size_t i = 0, j = 0;
  while (i < x.size() || j < y.size()) {
    if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) {
      T v = N::mul(a, x[i].second);
      if (v != 0) out.emplace_back(x[i].first, std::move(v));
      ++i;
    } else if (i == x.size() || y[j].first < x[i].first) {
      T v = N::mul(b, y[j].second);
      if (v != 0) out.emplace_back(y[j].first, std::move(v));
      ++j;
    } else {
      T v = N::add(N::mul(a, x[i].second), N::mul(b, y[j].second));
      if (v != 0) out.emplace_back(x[i].first, std::move(v));
      ++i;
      ++j;
    }
  }
  return out;
}

template <class T>
Vec<T> from_chain(const Chain& c) {
  Vec<T> out;
  out.reserve(c.size());
  for (const auto& [i, v] : c) out.emplace_back(i, Num<T>::from_int64(v));
  return out;
}

template <class T>
Chain to_chain(const Vec<T>& v) {
  Chain out;
  out.reserve(v.size());
  for (const auto& [i, x] : v) {
    const BigInt b = Num<T>::to_big(x);
    if (!b.fits_slong_p()) throw ArithmeticOverflow("chain coefficient does not fit in 64 bits");
    out.emplace_back(i, b.get_si());
  }
  return out;
}

/// Reduces columns with unimodular column operations so that the stored (pivot)
/// columns have pairwise distinct lowest rows. Inserted columns that reduce to zero
/// are dependent on earlier ones; with tracking enabled their combination vector
/// (over input ids) is a kernel element, and the kernel elements of all zero
/// columns form a Z-basis of the kernel of the inserted matrix.
template <class T>
class ColumnReducer {
 public:
  ColumnReducer(int rows, bool track) : track_(track), pivot_of_row_(static_cast<std::size_t>(rows), -1) {}

  struct Outcome {
    bool is_pivot = false;
    Vec<T> combination;  // only when tracking and the column vanished
  };

  Outcome insert(Vec<T> col, int input_id) {
    using N = Num<T>;
    Vec<T> comb;
    if (track_) comb.emplace_back(input_id, T(1));
    while (!col.empty()) {
      const int r = col.back().first;
      const int k = pivot_of_row_[static_cast<std::size_t>(r)];
      if (k < 0) {
        pivot_of_row_[static_cast<std::size_t>(r)] = static_cast<int>(pivots_.size());
        pivots_.push_back(std::move(col));
        if (track_) combs_.push_back(std::move(comb));
        return {true, {}};
      }
      Vec<T>& pk = pivots_[static_cast<std::size_t>(k)];
      const T ak = pk.back().second;
      const T aj = col.back().second;
      if (N::divides(ak, aj)) {
        const T f = N::neg(N::div(aj, ak));
        col = combine(T(1), col, f, pk);
        if (track_) comb = combine(T(1), comb, f, combs_[static_cast<std::size_t>(k)]);
      } else {
        T s, t;
        const T g = N::gcdext(ak, aj, s, t);
        const T u = N::div(ak, g);
        const T w = N::neg(N::div(aj, g));
        Vec<T> new_pk = combine(s, pk, t, col);
        col = combine(u, col, w, pk);
        pk = std::move(new_pk);
        if (track_) {
          Vec<T>& ck = combs_[static_cast<std::size_t>(k)];
          Vec<T> new_ck = combine(s, ck, t, comb);
          comb = combine(u, comb, w, ck);
          ck = std::move(new_ck);
        }
      }
    }
    return {false, std::move(comb)};
  }

  [[nodiscard]] std::size_t rank() const { return pivots_.size(); }
  [[nodiscard]] const std::vector<Vec<T>>& pivots() const { return pivots_; }
  [[nodiscard]] int pivot_of_row(int r) const { return pivot_of_row_[static_cast<std::size_t>(r)]; }

  [[nodiscard]] bool all_pivots_unit() const {
    for (const auto& p : pivots_) {
      if (!Num<T>::is_unit(p.back().second)) return false;
    }
    return true;
  }

  /// Columns of the non-unit pivots with every unit-pivot row eliminated. The Smith
  /// form of the stored span is 1 (once per unit pivot) followed by the Smith form of
  /// these residual columns.
  [[nodiscard]] std::vector<Vec<T>> residual_columns() const {
    using N = Num<T>;
    std::vector<Vec<T>> out;
    for (const auto& p : pivots_) {
      if (N::is_unit(p.back().second)) continue;
      Vec<T> col = p;
      col.pop_back();
      Vec<T> kept;
      kept.push_back(p.back());
      // Eliminate unit-pivot rows from the top down; each step only introduces rows
      // below the eliminated one.
      while (true) {
        int pos = -1;
        for (int i = static_cast<int>(col.size()) - 1; i >= 0; --i) {
          const int k = pivot_of_row_[static_cast<std::size_t>(col[static_cast<std::size_t>(i)].first)];
          if (k >= 0 && N::is_unit(pivots_[static_cast<std::size_t>(k)].back().second)) {
            pos = i;
            break;
          }
        }
        if (pos < 0) break;
        const int r = col[static_cast<std::size_t>(pos)].first;
        const Vec<T>& pk = pivots_[static_cast<std::size_t>(pivot_of_row_[static_cast<std::size_t>(r)])];
        const T f = N::neg(N::mul(col[static_cast<std::size_t>(pos)].second, pk.back().second));
        col = combine(T(1), col, f, pk);
      }
      for (auto& e : col) kept.push_back(std::move(e));
      std::sort(kept.begin(), kept.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
      out.push_back(std::move(kept));
    }
    return out;
  }

 private:
  bool track_;
  std::vector<int> pivot_of_row_;
  std::vector<Vec<T>> pivots_;
  std::vector<Vec<T>> combs_;
};

}  // namespace confstab::detail

#include "doctest.h"

#include <algorithm>
#include <random>

#include "confstab/smith.hpp"
#include "confstab/sparse_matrix.hpp"

using namespace confstab;

namespace {

std::vector<BigInt> divisors(const std::vector<std::vector<std::int64_t>>& rows) {
  return smith_normal_form(SparseIntMatrix::from_dense(rows));
}

std::vector<BigInt> big(std::initializer_list<long> xs) {
  std::vector<BigInt> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

SparseIntMatrix random_matrix(std::mt19937& rng, int rows, int cols) {
  std::uniform_int_distribution<int> value(-3, 3);
  std::bernoulli_distribution present(0.4);
  std::vector<Triplet> t;
  for (int i = 0; i < rows; ++i) {
    for (int j = 0; j < cols; ++j) {
      if (present(rng)) t.push_back({i, j, value(rng)});
    }
  }
  return SparseIntMatrix::from_triplets(rows, cols, t);
}

}  // namespace

TEST_CASE("small Smith forms") {
  CHECK(divisors({{2, 4}, {6, 8}}) == big({2, 4}));
  CHECK(divisors({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}}) == big({1, 1, 1}));
  CHECK(divisors({{0, 0}, {0, 0}}).empty());
  CHECK(smith_normal_form(SparseIntMatrix(0, 0)).empty());
  CHECK(divisors({{2, 0}, {0, 3}}) == big({1, 6}));
  CHECK(divisors({{4}}) == big({4}));
}

TEST_CASE("triplets sum duplicates and drop zeros") {
  const auto m = SparseIntMatrix::from_triplets(2, 2, {{0, 0, 2}, {0, 0, -2}, {1, 1, 3}, {1, 1, 1}});
  CHECK(m.nnz() == 1);
  CHECK(m.at(1, 1) == 4);
  CHECK(m.transpose().transpose() == m);
}

TEST_CASE("Smith form properties on random matrices") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 60; ++trial) {
    const int rows = 1 + trial % 6, cols = 1 + (trial * 7) % 6;
    const SparseIntMatrix m = random_matrix(rng, rows, cols);
    const auto d = smith_normal_form(m);
    // Divisibility chain, rank agreement and the dense algorithm as a second opinion.
    for (std::size_t i = 1; i < d.size(); ++i) CHECK(mpz_divisible_p(d[i].get_mpz_t(), d[i - 1].get_mpz_t()) != 0);
    CHECK(d.size() == rational_rank(m));
    CHECK(d == dense_smith_divisors(to_dense_big(m)));
    CHECK(d == smith_normal_form(m.transpose()));

    // Permuting rows and columns does not change the divisors.
    std::vector<int> pr(static_cast<std::size_t>(rows)), pc(static_cast<std::size_t>(cols));
    for (int i = 0; i < rows; ++i) pr[static_cast<std::size_t>(i)] = i;
    for (int j = 0; j < cols; ++j) pc[static_cast<std::size_t>(j)] = j;
    std::shuffle(pr.begin(), pr.end(), rng);
    std::shuffle(pc.begin(), pc.end(), rng);
    std::vector<Triplet> t;
    for (const auto& x : m.to_triplets()) t.push_back({pr[static_cast<std::size_t>(x.row)], pc[static_cast<std::size_t>(x.col)], x.value});
    CHECK(d == smith_normal_form(SparseIntMatrix::from_triplets(rows, cols, t)));

    const auto s = smith_normal_form_with_transforms(m);
    CHECK(s.divisors == d);
    CHECK(dense_multiply(dense_multiply(s.U, to_dense_big(m)), s.V) == s.D);
    CHECK(abs(determinant(s.U)) == 1);
    CHECK(abs(determinant(s.V)) == 1);
  }
}

TEST_CASE("square matrices: product of divisors is |det|") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    const SparseIntMatrix m = random_matrix(rng, 4, 4);
    const auto d = smith_normal_form(m);
    const BigInt det = determinant(to_dense_big(m));
    if (d.size() < 4) {
      CHECK(det == 0);
    } else {
      BigInt prod = 1;
      for (const auto& x : d) prod *= x;
      CHECK(prod == abs(det));
    }
  }
}

TEST_CASE("large entries fall back to big integers") {
  const std::int64_t big_value = 3'000'000'000'000'000'000LL;
  const auto d = divisors({{big_value, 1}, {1, big_value}});
  REQUIRE(d.size() == 2);
  CHECK(d[0] == 1);
  BigInt expected = BigInt(static_cast<long>(big_value)) * BigInt(static_cast<long>(big_value)) - 1;
  CHECK(d[1] == expected);
}

TEST_CASE("matrix products and triplet text") {
  const auto a = SparseIntMatrix::from_dense({{1, 2}, {0, 1}});
  const auto b = SparseIntMatrix::from_dense({{1, -2}, {0, 1}});
  CHECK(a.multiply(b) == SparseIntMatrix::from_dense({{1, 0}, {0, 1}}));
  CHECK(a.to_triplet_text() == "2 2 3\n0 0 1\n0 1 2\n1 1 1\n");
}

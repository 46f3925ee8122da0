#include "doctest.h"

#include "confstab/errors.hpp"
#include "confstab/rep_theory.hpp"

using namespace confstab;

namespace {

Partition P(std::vector<int> parts) { return Partition(std::move(parts)); }

std::vector<Rational> ints(std::initializer_list<long> xs) {
  std::vector<Rational> out;
  for (long x : xs) out.emplace_back(x);
  return out;
}

FamilyDescriptor star_family() { return make_wedge_family(make_point(), make_path_graph(1)); }

}  // namespace

TEST_CASE("partitions") {
  CHECK(partitions(4).size() == 5);
  CHECK(partitions(7).size() == 15);
  CHECK(partitions(4).front() == P({4}));
  CHECK(partitions(4).back() == P({1, 1, 1, 1}));
  CHECK(P({3, 1}).to_string() == "(3,1)");
  CHECK(Partition::parse("(2,2,1)") == P({2, 2, 1}));
  CHECK(Partition().to_string() == "()");
  CHECK_THROWS_AS(P({1, 2}), InvalidArgument);
  CHECK_THROWS_AS(P({2, 0}), InvalidArgument);
  CHECK(class_size(P({2, 1})) == 3);
  CHECK(class_size(P({3})) == 2);
  CHECK(cycle_type(class_representative(P({3, 2, 2}))) == P({3, 2, 2}));
}

TEST_CASE("Murnaghan-Nakayama values") {
  const auto classes = partitions(3);  // (3), (2,1), (1,1,1)
  CHECK(mn_character(P({2, 1}), P({1, 1, 1})) == 2);
  CHECK(mn_character(P({2, 1}), P({2, 1})) == 0);
  CHECK(mn_character(P({2, 1}), P({3})) == -1);
  for (int k = 1; k <= 6; ++k) {
    for (const Partition& mu : partitions(k)) {
      CHECK(mn_character(P({k}), mu) == 1);
      const int sign = (k - mu.length()) % 2 == 0 ? 1 : -1;
      CHECK(mn_character(P(std::vector<int>(static_cast<std::size_t>(k), 1)), mu) == sign);
    }
  }
  CHECK_THROWS_AS(mn_character(P({2, 1}), P({2})), InvalidArgument);
}

TEST_CASE("orthogonality relations") {
  for (int k = 1; k <= 7; ++k) {
    const auto ps = partitions(k);
    const auto table = character_table(k);
    const BigInt order = factorial(k);
    for (std::size_t a = 0; a < ps.size(); ++a) {
      CHECK(BigInt(static_cast<long>(table[a][ps.size() - 1])) == hook_length_dimension(ps[a]));
      for (std::size_t b = 0; b < ps.size(); ++b) {
        BigInt rows = 0, cols = 0;
        for (std::size_t j = 0; j < ps.size(); ++j) {
          rows += class_size(ps[j]) * table[a][j] * table[b][j];
          cols += BigInt(static_cast<long>(table[j][a] * table[j][b]));
        }
        CHECK(rows == (a == b ? order : BigInt(0)));
        CHECK(cols * class_size(ps[a]) == (a == b ? order : BigInt(0)));
      }
    }
  }
}

TEST_CASE("decompositions") {
  // Classes of partitions(3) in order (3), (2,1), (1,1,1).
  const auto perm = decompose(ints({0, 1, 3}), 3);
  CHECK(perm.at(P({3})) == 1);
  CHECK(perm.at(P({2, 1})) == 1);
  CHECK(perm.count(P({1, 1, 1})) == 0);
  const auto trivial = decompose(ints({1, 1, 1, 1, 1}), 4);
  CHECK(trivial.size() == 1);
  CHECK(trivial.at(P({4})) == 1);
  for (int k = 1; k <= 7; ++k) {
    std::vector<Rational> regular(partitions(k).size(), 0);
    regular.back() = Rational(factorial(k));
    for (const auto& [lambda, c] : decompose(regular, k)) CHECK(c == hook_length_dimension(lambda));
    CHECK(decompose(regular, k).size() == partitions(k).size());
  }
  CHECK_THROWS_AS(decompose(ints({1, 0, 0}), 3), CorruptedCharacter);
  CHECK_THROWS_AS(decompose(ints({0, -1, 1}), 3), CorruptedCharacter);
  CHECK_THROWS_AS(decompose(ints({1, 1}), 3), InvalidArgument);
  // Product of trivial characters.
  const auto prod = decompose_product({ints({1, 1}), ints({1, 1})}, 2, 2);
  CHECK(prod.size() == 1);
  CHECK(prod.at({P({2}), P({2})}) == 1);
}

TEST_CASE("padding") {
  CHECK(pad(P({1}), 4) == P({3, 1}));
  CHECK(padding_valid(P({2}), 4));
  CHECK_FALSE(padding_valid(P({2}), 3));
  CHECK(unpad(P({3, 1})) == P({1}));
  CHECK(pad(Partition(), 3) == P({3}));
  CHECK_THROWS_AS(pad(P({3}), 4), InvalidArgument);
  CHECK(padded_dimension({P({1})}, {5}) == 4);
}

TEST_CASE("homology characters") {
  const FamilyDescriptor star = star_family();
  const auto betti = homology_character(star, {4}, {{0, 1, 2, 3}}, 2, 1);
  CHECK(betti == 5);
  CHECK(homology_character(star, {4}, {{1, 2, 0, 3}}, 1, 0) == 1);
  const Rational t = homology_character(star, {4}, {{1, 2, 3, 0}}, 2, 1);
  CHECK(t.get_den() == 1);
  CHECK(abs(t) <= 5);
  // Class function: conjugate permutations, and a permutation and its inverse.
  CHECK(homology_character(star, {4}, {{3, 0, 1, 2}}, 2, 1) == t);
  CHECK(homology_character(star, {4}, {{2, 3, 1, 0}}, 2, 1) == homology_character(star, {4}, {{1, 0, 3, 2}}, 2, 1));
  CHECK(homology_character(star, {4}, {{1, 2, 0, 3}}, 2, 1) == homology_character(star, {4}, {{2, 0, 1, 3}}, 2, 1));
  CHECK_THROWS_AS(homology_character(make_interval_family(make_cycle_graph(3)), {2}, {{1, 0}}, 2, 1), InvalidArgument);
}

TEST_CASE("character reports and stability") {
  const FamilyDescriptor star = star_family();
  std::vector<CharacterReport> reports;
  for (int k = 5; k <= 6; ++k) {
    const CharacterReport r = character_report(star, {k}, 2, 1);
    CHECK(r.class_data.back().value == Rational(static_cast<unsigned long>(r.betti)));
    BigInt total = 0;
    for (const auto& [labels, c] : r.multiplicities) {
      CHECK(c >= 0);
      total += c * padded_dimension(labels, r.sizes);
    }
    CHECK(total == static_cast<unsigned long>(r.betti));
    reports.push_back(r);
  }
  const StabilityVerdict v = stability_verdict(reports);
  CHECK(v.stable);
  CHECK(v.window.size() == 2);

  // A report whose multiplicities miss the Betti number is corrupted.
  auto broken = reports;
  broken[1].betti += 1;
  CHECK_THROWS_AS(stability_verdict(broken), CorruptedCharacter);

  // Identical decompositions are stable; a changed row is not.
  auto moved = reports;
  moved[1].multiplicities.begin()->second += 1;
  moved[1].betti += static_cast<std::size_t>(padded_dimension(moved[1].multiplicities.begin()->first, moved[1].sizes).get_ui());
  CHECK_FALSE(stability_verdict(moved).stable);

  CharacterOptions small;
  small.max_k = 4;
  CHECK_THROWS_AS(character_report(star, {5}, 2, 1, small), InvalidArgument);
}

#include "doctest.h"

#include <random>

#include "confstab/complex.hpp"
#include "confstab/errors.hpp"
#include "confstab/family.hpp"
#include "confstab/homology.hpp"

using namespace confstab;

namespace {

std::vector<Rational> unit(std::size_t n, std::size_t i) {
  std::vector<Rational> v(n, 0);
  v[i] = 1;
  return v;
}

Chain random_combination(std::mt19937& rng, const std::vector<Chain>& basis) {
  std::uniform_int_distribution<int> coeff(-3, 3);
  Chain z;
  for (const Chain& b : basis) z = chain_add(z, b, coeff(rng));
  return z;
}

}  // namespace

TEST_CASE("homology of small models") {
  const auto fig2 = homology(build_model(make_path_graph(1), 2, {0, 1}), 1);
  CHECK(fig2.betti() == 1);
  CHECK(fig2.torsion().empty());
  CHECK(homology(build_model(make_path_graph(1), 3), 0).betti() == 6);
  CHECK(homology(build_model(make_cycle_graph(3), 1), 1).betti() == 1);
  const auto above = homology(build_model(make_star(3), 2), 7);
  CHECK(above.betti() == 0);
  CHECK(above.torsion().empty());
}

TEST_CASE("Euler characteristic equals the alternating Betti sum") {
  for (const Graph& g : {make_star(3), make_h_graph(), make_cycle_graph(4), make_star(4)}) {
    for (int n = 0; n <= 3; ++n) {
      const CubeComplex c = build_model(g, n);
      const auto b = betti_numbers(c);
      std::int64_t chi = 0;
      for (std::size_t q = 0; q < b.size(); ++q) chi += (q % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(b[q]);
      CHECK(chi == c.euler_characteristic());
    }
  }
}

TEST_CASE("kernel basis of a matrix") {
  const auto d = SparseIntMatrix::from_dense({{1, 1, 0}, {-1, 0, 1}, {0, -1, -1}});
  const auto k = kernel_basis(d);
  REQUIRE(k.size() == 1);
  CHECK(d.apply(k[0]).empty());
  CHECK(kernel_basis(SparseIntMatrix::from_dense({{2, 4}})).size() == 1);
}

TEST_CASE("projection is linear and kills boundaries") {
  std::mt19937 rng(2024);
  const CubeComplex c = build_model(make_h_graph(), 3);
  const HomologyPresentation h = homology(c, 1);
  REQUIRE(h.betti() > 0);
  const auto& basis = h.cycle_basis();
  for (std::size_t i = 0; i < basis.size(); ++i) CHECK(h.project(basis[i]) == unit(basis.size(), i));

  const auto& d2 = c.boundary_ref(2);
  const auto cycles = cycle_space_basis(c, 1);
  for (int trial = 0; trial < 20; ++trial) {
    std::uniform_int_distribution<int> cell(0, d2.cols() - 1);
    const Chain w = d2.column(cell(rng));
    CHECK(h.project(w) == std::vector<Rational>(basis.size(), 0));
    const Chain x = random_combination(rng, cycles);
    const Chain y = random_combination(rng, cycles);
    auto px = h.project(x);
    const auto py = h.project(y);
    const auto pxy = h.project(chain_add(chain_add(x, y, 2), w));
    for (std::size_t i = 0; i < px.size(); ++i) CHECK(pxy[i] == px[i] + 2 * py[i]);
  }
  // 2 * basis[0] + boundary.
  const Chain z = chain_add(chain_scale(basis[0], 2), d2.column(0));
  auto expected = unit(basis.size(), 0);
  expected[0] = 2;
  CHECK(h.project(z) == expected);
  CHECK_THROWS_AS((void)h.project({{0, 1}}), InvalidArgument);
}

TEST_CASE("generated_check edge cases") {
  const CubeComplex c = build_model(make_star(3), 2);
  const HomologyPresentation h = homology(c, 1);
  const auto all = generated_check(c, 1, h.cycle_basis());
  CHECK(all.generates_over_q);
  CHECK(all.generates_over_z);
  CHECK(all.missing_rank == 0);
  const auto none = generated_check(c, 1, {});
  CHECK_FALSE(none.generates_over_q);
  CHECK_FALSE(none.generates_over_z);
  CHECK(none.missing_rank == 1);
  const auto bdry = generated_check(c, 1, {c.boundary_ref(2).cols() > 0 ? c.boundary_ref(2).column(0) : Chain{}});
  CHECK(bdry.missing_rank == 1);
  // Twice a generator spans over Q but not over Z.
  const auto twice = generated_check(c, 1, {chain_scale(h.cycle_basis()[0], 2)});
  CHECK(twice.generates_over_q);
  CHECK_FALSE(twice.generates_over_z);
  CHECK_THROWS_AS(generated_check(c, 1, {{{0, 1}}}), InvalidArgument);
}

TEST_CASE("inclusion of the star into a larger wedge") {
  const Graph big = wedge(make_star(3), make_path_graph(1));
  const CubeComplex c = build_model(big, 2);
  Subgraph s = Subgraph::empty(big);
  for (VertexId v = 0; v < 4; ++v) s.vertices[static_cast<std::size_t>(v)] = true;
  for (EdgeId e = 0; e < 3; ++e) s.edges[static_cast<std::size_t>(e)] = true;
  const SupportedSubcomplex sub = subcomplex_supported_in(c, s);
  CHECK(betti_numbers(sub.complex) == betti_numbers(build_model(make_star(3), 2)));
  const InducedMap m = induced_inclusion_map(sub, c, 1);
  CHECK(m.pushed_cycles.size() == 1);
  CHECK(rational_matrix_rank(m.matrix) == 1);

  const SupportedSubcomplex whole = subcomplex_supported_in(c, Subgraph::whole(big));
  const InducedMap id = induced_inclusion_map(whole, c, 1);
  CHECK(id.matrix == rational_identity(id.matrix.size()));

  const CubeComplex other = build_model(make_h_graph(), 2);
  CHECK_THROWS_AS(induced_inclusion_map(sub, other, 1), InvalidArgument);
}

TEST_CASE("permutation action") {
  const FamilyDescriptor star = make_wedge_family(make_point(), make_path_graph(1));
  const Graph g = realize_family(star, {3});
  const CubeComplex c = build_model(g, 2);
  const HomologyPresentation h = homology(c, 1);

  const auto phi_id = permutation_action_map(c, summand_permutation(star, {3}, {{0, 1, 2}}));
  for (int q = 0; q <= c.top_dimension(); ++q) {
    for (std::size_t i = 0; i < c.num_cells(q); ++i) CHECK(phi_id.image(q, i) == std::make_pair(i, 1));
  }
  const auto swap = permutation_action_map(c, summand_permutation(star, {3}, {{1, 0, 2}}));
  const auto m = induced_homology_matrix(h, swap);
  CHECK(rational_multiply(m, m) == rational_identity(h.betti()));

  // Chain maps commute with the boundary.
  const auto rot = permutation_action_map(c, summand_permutation(star, {3}, {{1, 2, 0}}));
  for (int q = 1; q <= c.top_dimension(); ++q) {
    for (std::size_t i = 0; i < c.num_cells(q); ++i) {
      const Chain cell{{static_cast<int>(i), 1}};
      CHECK(c.boundary_ref(q).apply(rot.apply(q, cell)) == rot.apply(q - 1, c.boundary_ref(q).apply(cell)));
    }
  }
  // Functoriality: the action of a composite is the product of the actions.
  const auto rot2 = permutation_action_map(c, summand_permutation(star, {3}, {{2, 0, 1}}));
  const auto mr = induced_homology_matrix(h, rot);
  const auto mr2 = induced_homology_matrix(h, rot2);
  CHECK(rational_multiply(mr, mr) == mr2);
  CHECK(rational_multiply(mr, mr2) == rational_identity(h.betti()));

  // A single edge swapped with nothing is not an automorphism.
  GraphAutomorphism bad;
  bad.vertex_map = {0, 2, 1, 3};
  bad.edge_map = {0, 1, 2};
  CHECK_THROWS_AS(permutation_action_map(c, bad), InvalidArgument);

  // Path as Star_2, n = 1: H_0 is fixed.
  const Graph p = realize_family(star, {2});
  const CubeComplex c1 = build_model(p, 1);
  const auto m0 = induced_homology_matrix(homology(c1, 0), permutation_action_map(c1, summand_permutation(star, {2}, {{1, 0}})));
  CHECK(m0 == rational_identity(1));
}

TEST_CASE("rational matrix helpers") {
  RationalMatrix a{{1, 2}, {2, 4}};
  CHECK(rational_matrix_rank(a) == 1);
  CHECK(trace(a) == 5);
  CHECK(rational_multiply(rational_identity(2), a) == a);
}

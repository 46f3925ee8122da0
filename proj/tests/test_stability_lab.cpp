#include "doctest.h"

#include "confstab/errors.hpp"
#include "confstab/stability_lab.hpp"

using namespace confstab;

namespace {

Graph interval() { return make_path_graph(1); }

FamilyDescriptor star_family() { return make_wedge_family(make_point(), interval()); }

// Two vertices of valence three joined through a valence-two vertex.
Graph long_h() {
  Graph g(8);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(0, 3);
  g.add_edge(0, 4);
  g.add_edge(2, 5);
  g.add_edge(2, 6);
  g.add_edge(2, 7);
  return g;
}

bool is_cycle(const CubeComplex& c, int q, const Chain& z) { return !z.empty() && c.boundary_ref(q).apply(z).empty(); }

}  // namespace

TEST_CASE("star cycle generates H1 of Conf2(Star3)") {
  const Graph g = make_star(3);
  const CubeComplex c = build_model(g, 2);
  const BasicCycle s = star_cycle(g, 0, {0, 1, 2}, 0, 1);
  const Chain z = product_cycle(c, {s}, {});
  CHECK(is_cycle(c, 1, z));
  CHECK(s.steps().size() == 12);
  const auto v = generated_check(c, 1, {z});
  CHECK(v.betti == 1);
  CHECK(v.generates_over_z);

  const HomologyPresentation h = homology(c, 1);
  const auto a = h.project(z);
  // Swapping the particles traces the same loop in the other order of visits.
  const auto b = h.project(product_cycle(c, {star_cycle(g, 0, {0, 1, 2}, 1, 0)}, {}));
  const auto r = h.project(product_cycle(c, {star_cycle(g, 0, {0, 2, 1}, 0, 1)}, {}));
  CHECK(a[0] != 0);
  CHECK(b[0] == a[0]);
  CHECK(r[0] == -a[0]);
}

TEST_CASE("star cycle with a parked particle") {
  const Graph g = make_star(3);
  const CubeComplex c = build_model(g, 3);
  const BasicCycle s = star_cycle(g, 0, {0, 1, 2}, 0, 1);
  Parking far;
  far[2] = {false, 3, 0, -1};
  const Chain z = product_cycle(c, {s}, far);
  CHECK(is_cycle(c, 1, z));
  const HomologyPresentation h = homology(c, 1);
  const auto coords = h.project(z);
  bool nonzero = false;
  for (const auto& x : coords) nonzero = nonzero || x != 0;
  CHECK(nonzero);

  Parking behind;
  behind[2] = {true, 0, 0, -1};
  CHECK(is_cycle(c, 1, product_cycle(c, {s}, behind)));
  CHECK(canonical_parking(g, 3, {s}).at(2).site != 0);
}

TEST_CASE("star cycle errors") {
  const Graph g = make_star(3);
  CHECK_THROWS_AS(star_cycle(make_path_graph(2), 1, {0, 1, 1}, 0, 1), InvalidArgument);
  CHECK_THROWS_AS(star_cycle(g, 1, {0, 1, 2}, 0, 1), InvalidArgument);
  CHECK_THROWS_AS(star_cycle(g, 0, {0, 1, 2}, 1, 1), InvalidArgument);
  const CubeComplex c = build_model(g, 3);
  Parking on_center;
  on_center[2] = {false, 0, 0, -1};
  CHECK_THROWS_AS(product_cycle(c, {star_cycle(g, 0, {0, 1, 2}, 0, 1)}, on_center), InvalidArgument);
}

TEST_CASE("H cycle is a nonzero class") {
  const Graph g = make_h_graph();
  const CubeComplex c = build_model(g, 2);
  const BasicCycle hc = h_cycle(g, 0, 1, {1, 2}, {3, 4}, 0, 1);
  const Chain z = product_cycle(c, {hc}, {});
  CHECK(is_cycle(c, 1, z));
  const auto coords = homology(c, 1).project(z);
  bool nonzero = false;
  for (const auto& x : coords) nonzero = nonzero || x != 0;
  CHECK(nonzero);
  CHECK_THROWS_AS(h_cycle(g, 0, 0, {1, 2}, {3, 4}, 0, 1), InvalidArgument);

  const Graph lh = long_h();
  const CubeComplex c2 = build_model(lh, 2);
  CHECK(is_cycle(c2, 1, product_cycle(c2, {h_cycle(lh, 0, 2, {2, 3}, {4, 5}, 1, 0)}, {})));
}

TEST_CASE("products of star cycles") {
  // Two essential vertices joined by an edge; the stars share that edge at opposite ends.
  const Graph g = make_h_graph();
  const CubeComplex c = build_model(g, 4);
  const BasicCycle s1 = star_cycle(g, 0, {0, 1, 2}, 0, 1);
  const BasicCycle s2 = star_cycle(g, 1, {0, 3, 4}, 2, 3);
  REQUIRE(compatible({s1, s2}));
  const Chain z = product_cycle(c, {s1, s2}, {});
  CHECK(is_cycle(c, 2, z));
  const HomologyPresentation h = homology(c, 2);
  CHECK(h.betti() > 0);
  bool nonzero = false;
  for (const auto& x : h.project(z)) nonzero = nonzero || x != 0;
  CHECK(nonzero);
  // One factor is the factor itself.
  const CubeComplex c2 = build_model(g, 2);
  CHECK(product_cycle(c2, {s1}, {}) == product_cycle(c2, {s1}, {}));
  CHECK_FALSE(compatible({s1, star_cycle(g, 0, {0, 1, 2}, 2, 3)}));
}

TEST_CASE("tree generating theorem on small trees") {
  for (int n = 1; n <= 3; ++n) {
    for (int q = 0; q <= 2; ++q) {
      CHECK(verify_tree_generators(make_star(3), n, q).verdict.generates_over_z);
      CHECK(verify_tree_generators(make_h_graph(), n, q).verdict.generates_over_z);
      CHECK(verify_tree_generators(make_star(4), n, q).verdict.generates_over_z);
    }
  }
  CHECK(verify_tree_generators(make_star(5), 3, 1).verdict.generates_over_z);
  const auto products = verify_tree_generators(make_h_graph(), 4, 2);
  CHECK(products.betti > 0);
  CHECK(products.verdict.generates_over_z);
  const auto vacuous = verify_tree_generators(make_path_graph(1), 3, 1);
  CHECK(vacuous.betti == 0);
  CHECK(vacuous.verdict.generates_over_z);
  CHECK(verify_tree_generators(long_h(), 3, 1).verdict.generates_over_z);
  CHECK_THROWS_AS(verify_tree_generators(make_cycle_graph(3), 2, 1), InvalidArgument);
}

TEST_CASE("local cycles of a star region") {
  const Graph g = make_star(3);
  const Region r = star_region(g, 0);
  CHECK(r.uses.size() == 3);
  const auto two = local_cycles(g, r, {0, 1});
  REQUIRE_FALSE(two.empty());
  const CubeComplex c = build_model(g, 2);
  std::vector<Chain> zs;
  for (const auto& b : two) zs.push_back(product_cycle(c, {b}, {}));
  CHECK(generated_check(c, 1, zs).generates_over_z);
  CHECK(local_cycles(g, r, {0}).empty());
  CHECK_THROWS_AS(star_region(make_path_graph(2), 1), InvalidArgument);
  CHECK_THROWS_AS(local_cycles(g, r, {1, 1}), InvalidArgument);
}

TEST_CASE("parkings enumerate orders on shared edges") {
  const Graph g = make_path_graph(1);
  // Two particles on an interval: two vertices, or stacked in either order.
  const auto all = enumerate_parkings(g, 2, {});
  CHECK(all.size() == 8);
}

TEST_CASE("generation degrees for the star family") {
  const auto r = generation_degree_check(star_family(), 2, 1, 4, {5});
  CHECK(r.over_z);
  CHECK(r.over_q);
  REQUIRE(r.d_min.has_value());
  CHECK(*r.d_min <= 4);
  CHECK(r.paper_bound == 4);
  CHECK(r.pass == true);
  // Monotone in the degree.
  for (const auto& v : r.trail) {
    if (v.degree >= *r.d_min) CHECK(v.over_z);
  }
  const auto whole = generation_degree_check(star_family(), 2, 1, 5, {5});
  CHECK(whole.over_z);
  CHECK_THROWS_AS(generation_degree_check(star_family(), 2, 1, 6, {5}), InvalidArgument);
}

TEST_CASE("generation check reports a budget overrun") {
  LabOptions tiny;
  tiny.max_cells = 50;
  const auto r = generation_degree_check(star_family(), 2, 1, 2, {5}, tiny);
  CHECK(r.partial);
  CHECK_FALSE(r.partial_reason.empty());
}

TEST_CASE("interval family generated in degree n") {
  const auto r = generation_degree_check(make_interval_family(make_cycle_graph(3)), 2, 1, 2, {4});
  CHECK(r.over_z);
  CHECK(r.paper_bound == 2);
  CHECK(r.pass == true);
}

TEST_CASE("polynomial fits") {
  const auto constant = fit_polynomial({1, 2, 3, 4}, {5, 5, 5, 5}, 1, 2);
  CHECK(constant.fits);
  CHECK(constant.degree == 0);
  const auto zero = dimension_polynomial_check(star_family(), 1, 1, 3, 6, 1, 2);
  CHECK(zero.fits);
  CHECK(zero.degree == -1);
  const auto quad = fit_polynomial({0, 1, 2, 3, 4}, {1, 2, 5, 10, 17}, 2, 2);
  CHECK(quad.fits);
  CHECK(quad.coefficients == std::vector<Rational>{1, 0, 1});
  CHECK_FALSE(fit_polynomial({0, 1, 2, 3}, {0, 1, 4, 10}, 2, 1).fits);
  CHECK_THROWS_AS(fit_polynomial({0, 1, 2}, {0, 1, 2}, 2, 1), InvalidArgument);
}

TEST_CASE("paper degree bounds") {
  CHECK(paper_degree_bound(star_family(), 3) == 6);
  CHECK(paper_degree_bound(make_wedge_family(make_cycle_graph(3), interval()), 2) == 6);
  CHECK(paper_degree_bound(make_interval_family(make_cycle_graph(3)), 2) == 2);
  CHECK(paper_degree_bound(make_circle_family(make_cycle_graph(3)), 2) == 12);
}

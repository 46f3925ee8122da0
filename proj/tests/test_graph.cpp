#include "doctest.h"

#include <algorithm>

#include "confstab/errors.hpp"
#include "confstab/family.hpp"
#include "confstab/graph.hpp"
#include "confstab/graph_io.hpp"

using namespace confstab;

namespace {

std::vector<int> valences(const Graph& g) {
  std::vector<int> out;
  for (VertexId v = 0; v < g.num_vertices(); ++v) out.push_back(g.valence(v));
  std::sort(out.begin(), out.end());
  return out;
}

long long binomial(int a, int b) {
  long long r = 1;
  for (int i = 1; i <= b; ++i) r = r * (a - b + i) / i;
  return r;
}

}  // namespace

TEST_CASE("stars") {
  const Graph s3 = make_star(3);
  CHECK(s3.num_vertices() == 4);
  CHECK(s3.num_edges() == 3);
  CHECK(s3.valence(0) == 3);
  CHECK(s3.basepoint() == 0);
  CHECK(make_star(1).num_vertices() == 2);
  CHECK(make_star(1).num_edges() == 1);
  CHECK(make_star(5).euler_characteristic() == 1);
  CHECK_THROWS_AS(make_star(0), InvalidArgument);
}

TEST_CASE("H graph") {
  const Graph h = make_h_graph();
  CHECK(h.num_vertices() == 6);
  CHECK(h.num_edges() == 5);
  CHECK(valences(h) == std::vector<int>{1, 1, 1, 1, 3, 3});
  CHECK(h.euler_characteristic() == 1);
  CHECK(essential_vertices(h).size() == 2);
  CHECK(h.is_tree());
}

TEST_CASE("cycles and paths") {
  CHECK(make_cycle_graph(3).euler_characteristic() == 0);
  CHECK(make_cycle_graph(4).num_vertices() == 4);
  CHECK(make_cycle_graph(4).num_edges() == 4);
  const Graph i = make_path_graph(1);
  CHECK(i.num_vertices() == 2);
  CHECK(i.num_edges() == 1);
  CHECK(i.basepoint() == 0);
  CHECK_THROWS_AS(make_cycle_graph(2), InvalidArgument);
  CHECK_THROWS_AS(make_path_graph(0), InvalidArgument);
}

TEST_CASE("glueing") {
  Graph g = make_point();
  for (int k = 0; k < 4; ++k) g = wedge(g, make_path_graph(1));
  CHECK(valences(g) == valences(make_star(4)));
  CHECK(g.is_tree());

  const Graph two = wedge(make_path_graph(1), make_path_graph(1));
  CHECK(two.num_edges() == 2);
  CHECK(valences(two) == std::vector<int>{1, 1, 2});

  const Graph loop = identify_vertices(make_path_graph(2), 0, 2);
  CHECK(loop.num_vertices() == 2);
  CHECK(loop.num_edges() == 2);
  CHECK(loop.euler_characteristic() == 0);
  CHECK(loop.is_connected());

  // Subtree glue: counts drop by the identified part.
  GlueMap along;
  along.vertices = {{1, 0}, {2, 1}};
  along.edges = {{1, 0}};
  const GlueResult r = glue(make_path_graph(3), make_star(3), along);
  CHECK(r.graph.num_vertices() == 4 + 4 - 2);
  CHECK(r.graph.num_edges() == 3 + 3 - 1);
  CHECK(r.graph.is_tree());

  GlueMap bad;
  bad.vertices = {{0, 0}, {1, 2}};
  bad.edges = {{0, 0}};
  CHECK_THROWS_AS(glue(make_path_graph(3), make_star(3), bad), InvalidArgument);
}

TEST_CASE("subdivision") {
  const Graph i2 = subdivide(make_path_graph(1), 2);
  CHECK(i2.num_edges() == 2);
  CHECK(i2.num_vertices() == 3);
  const Graph s = subdivide(make_star(3), 3);
  CHECK(s.num_vertices() == 10);
  CHECK(s.num_edges() == 9);
  CHECK(subdivide(make_h_graph(), 1) == make_h_graph());
  for (const Graph& g : {make_cycle_graph(3), make_h_graph(), make_star(5)}) {
    CHECK(subdivide(g, 4).euler_characteristic() == g.euler_characteristic());
  }
  Graph loop(1);
  loop.add_edge(0, 0);
  const Graph fixed = normalize_loops(loop);
  CHECK_FALSE(fixed.has_loops());
  CHECK(fixed.euler_characteristic() == 0);
}

TEST_CASE("family realizations") {
  const FamilyDescriptor star = make_wedge_family(make_point(), make_path_graph(1));
  for (int k = 1; k <= 5; ++k) {
    const Graph g = realize_family(star, {k});
    CHECK(valences(g) == valences(make_star(k)));
    CHECK(g.has_labels());
  }
  const Graph bare = realize_family(make_interval_family(make_cycle_graph(3)), {0});
  CHECK(bare.is_tree());
  CHECK(valences(bare).back() <= 2);

  const Graph circ = realize_family(make_circle_family(make_cycle_graph(3)), {2});
  CHECK(circ.euler_characteristic() == -2);

  // |E| = |E(G0)| + sum j (|E(G1)| - |E(H1)|).
  const FamilyDescriptor a1 = make_wedge_family(make_cycle_graph(3), make_path_graph(1));
  for (int k = 0; k <= 4; ++k) {
    const Graph g = realize_family(a1, {k});
    CHECK(g.num_edges() == 3 + k);
    CHECK(g.num_vertices() == 3 + k);
  }
}

TEST_CASE("support embeddings") {
  const FamilyDescriptor star = make_wedge_family(make_point(), make_path_graph(1));
  CHECK(support_embeddings(star, {2}, {4}).size() == 6);
  const FamilyDescriptor interval = make_interval_family(make_cycle_graph(3));
  CHECK(support_embeddings(interval, {3}, {3}).size() == 1);
  CHECK(support_embeddings(interval, {2}, {4}).size() == static_cast<std::size_t>(binomial(4, 2)));
  const FamilyDescriptor circle = make_circle_family(make_cycle_graph(3));
  const auto five = support_embeddings(circle, {1}, {5});
  CHECK(five.size() == 5);
  const Graph g = realize_family(circle, {5});
  for (const Subgraph& s : five) {
    CHECK(s.is_subgraph_of(g));
    CHECK(s.is_connected(g));
  }
  CHECK_THROWS_AS(support_embeddings(star, {5}, {4}), InvalidArgument);
}

TEST_CASE("JSON round trip") {
  const FamilyDescriptor star = make_wedge_family(make_point(), make_path_graph(1));
  for (const Graph& g : {make_h_graph(), make_cycle_graph(4), realize_family(star, {3})}) {
    const auto j = graph_to_json(g);
    const Graph back = graph_from_json(j);
    CHECK(back == g);
    CHECK(to_canonical_string(graph_to_json(back)) == to_canonical_string(j));
  }
  const FamilyDescriptor circle = make_circle_family(make_cycle_graph(3));
  const auto fj = family_to_json(circle);
  CHECK(to_canonical_string(family_to_json(family_from_json(fj))) == to_canonical_string(fj));
  CHECK_THROWS_AS(graph_from_json(nlohmann::json::parse(R"({"vertices":[0,1],"edges":[[0,5]]})")), InvalidArgument);
  CHECK_THROWS_AS(family_from_json(nlohmann::json::parse(R"({"kind":"torus","summands":[]})")), InvalidArgument);
}

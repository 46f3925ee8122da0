#pragma once

#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

namespace confstab {

using VertexId = int;
using EdgeId = int;

/// An oriented edge; the orientation is fixed by storage order.
struct Edge {
  VertexId tail = 0;
  VertexId head = 0;

  [[nodiscard]] VertexId endpoint(int end) const { return end == 0 ? tail : head; }
  [[nodiscard]] bool is_loop() const { return tail == head; }
  friend bool operator==(const Edge&, const Edge&) = default;
};

/// Which glued summand an item belongs to. Coordinate 0 is the base graph.
struct SummandLabel {
  int coordinate = 0;
  int copy = 0;
  friend auto operator<=>(const SummandLabel&, const SummandLabel&) = default;
};

/// Finite multigraph with dense vertex and edge ids assigned in construction order.
///
/// Loops and parallel edges are allowed. Summand labels are optional; when a graph
/// carries labels, every vertex and every edge has one.
class Graph {
 public:
  Graph() = default;
  explicit Graph(int vertex_count);

  VertexId add_vertex(std::optional<SummandLabel> label = std::nullopt);
  EdgeId add_edge(VertexId tail, VertexId head, std::optional<SummandLabel> label = std::nullopt);

  [[nodiscard]] int num_vertices() const { return static_cast<int>(vertex_labels_.size()); }
  [[nodiscard]] int num_edges() const { return static_cast<int>(edges_.size()); }
  [[nodiscard]] const Edge& edge(EdgeId e) const { return edges_.at(static_cast<std::size_t>(e)); }
  [[nodiscard]] const std::vector<Edge>& edges() const { return edges_; }

  /// Edges incident to v; a loop at v is listed twice.
  [[nodiscard]] const std::vector<EdgeId>& incident_edges(VertexId v) const;
  /// Number of edge ends at v (a loop counts twice).
  [[nodiscard]] int valence(VertexId v) const;

  [[nodiscard]] std::optional<VertexId> basepoint() const { return basepoint_; }
  void set_basepoint(std::optional<VertexId> v);

  [[nodiscard]] bool has_labels() const;
  [[nodiscard]] std::optional<SummandLabel> vertex_label(VertexId v) const;
  [[nodiscard]] std::optional<SummandLabel> edge_label(EdgeId e) const;
  void set_vertex_label(VertexId v, std::optional<SummandLabel> label);
  void set_edge_label(EdgeId e, std::optional<SummandLabel> label);

  [[nodiscard]] bool is_connected() const;
  [[nodiscard]] bool is_tree() const;
  [[nodiscard]] bool has_loops() const;
  [[nodiscard]] int euler_characteristic() const { return num_vertices() - num_edges(); }
  [[nodiscard]] bool has_vertex(VertexId v) const { return v >= 0 && v < num_vertices(); }
  [[nodiscard]] bool has_edge(EdgeId e) const { return e >= 0 && e < num_edges(); }

  friend bool operator==(const Graph& a, const Graph& b);

 private:
  std::vector<Edge> edges_;
  std::vector<std::vector<EdgeId>> incidence_;
  std::vector<std::optional<SummandLabel>> vertex_labels_;
  std::vector<std::optional<SummandLabel>> edge_labels_;
  std::optional<VertexId> basepoint_;
};

/// A subgraph of a fixed ambient graph, as membership masks.
struct Subgraph {
  std::vector<bool> vertices;
  std::vector<bool> edges;

  static Subgraph empty(const Graph& g);
  static Subgraph whole(const Graph& g);

  [[nodiscard]] bool contains_vertex(VertexId v) const { return vertices[static_cast<std::size_t>(v)]; }
  [[nodiscard]] bool contains_edge(EdgeId e) const { return edges[static_cast<std::size_t>(e)]; }
  [[nodiscard]] int vertex_count() const;
  [[nodiscard]] int edge_count() const;
  /// Sizes match g and every member edge has both endpoints in the subgraph.
  [[nodiscard]] bool is_subgraph_of(const Graph& g) const;
  [[nodiscard]] bool is_connected(const Graph& g) const;

  friend bool operator==(const Subgraph&, const Subgraph&) = default;
};

// Canonical constructions.

/// Star with k leaves; vertex 0 is the center and the basepoint, edges point outward.
Graph make_star(int k);
/// The tree with two adjacent vertices of valence three and four leaves.
Graph make_h_graph();
/// Cycle with m vertices and m edges; vertex 0 is the basepoint.
Graph make_cycle_graph(int m);
/// Path with m edges; vertex 0 (an endpoint) is the basepoint.
Graph make_path_graph(int m);
/// A single vertex, which is the basepoint.
Graph make_point();

/// Identification of a subtree of `a` with a subtree of `b`.
struct GlueMap {
  std::vector<std::pair<VertexId, VertexId>> vertices;
  std::vector<std::pair<EdgeId, EdgeId>> edges;
};

/// Result of glue(): the glued graph plus where b's vertices and edges went.
struct GlueResult {
  Graph graph;
  std::vector<VertexId> vertex_map_b;
  std::vector<EdgeId> edge_map_b;
};

/// Glues b onto a along the marked subtrees. Vertices and edges of a keep their ids;
/// the unmatched parts of b are appended in order. Labels of both sides are kept.
GlueResult glue(const Graph& a, const Graph& b, const GlueMap& along);
/// Wedge at the basepoints of a and b; the result keeps a's basepoint.
Graph wedge(const Graph& a, const Graph& b);
/// Identifies vertex v with vertex u inside one graph (self-glue). v is removed and
/// later vertex ids shift down by one.
Graph identify_vertices(const Graph& g, VertexId u, VertexId v);

/// Replaces every edge by a path of t edges. Edge e becomes edges e, E+(t-1)e, ...
/// so the first segment of every edge keeps its id.
Graph subdivide(const Graph& g, int t);

/// Subdivides each loop edge once. The loop keeps its id as its first half; the
/// second half is appended. Returns g unchanged when it has no loops.
Graph normalize_loops(const Graph& g);

/// Valence-at-least-three vertices.
std::vector<VertexId> essential_vertices(const Graph& g);

/// Vertices on the unique path between u and w in a tree, including both ends, and the
/// edges along it in order from u.
struct TreePath {
  std::vector<VertexId> vertices;
  std::vector<EdgeId> edges;
};
TreePath tree_path(const Graph& tree, VertexId u, VertexId w);

}  // namespace confstab

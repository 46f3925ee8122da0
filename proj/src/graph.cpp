#include "confstab/graph.hpp"

#include <algorithm>
#include <numeric>
#include <queue>
#include <set>
#include <string>

#include "confstab/errors.hpp"

namespace confstab {

Graph::Graph(int vertex_count) {
  if (vertex_count < 0) throw InvalidArgument("negative vertex count");
  for (int i = 0; i < vertex_count; ++i) add_vertex();
}

VertexId Graph::add_vertex(std::optional<SummandLabel> label) {
  vertex_labels_.push_back(label);
  incidence_.emplace_back();
  return num_vertices() - 1;
}

EdgeId Graph::add_edge(VertexId tail, VertexId head, std::optional<SummandLabel> label) {
  if (!has_vertex(tail) || !has_vertex(head)) {
    throw InvalidArgument("edge endpoint " + std::to_string(has_vertex(tail) ? head : tail) +
                          " is not a vertex");
  }
  const EdgeId e = num_edges();
  edges_.push_back({tail, head});
  edge_labels_.push_back(label);
  incidence_[static_cast<std::size_t>(tail)].push_back(e);
  incidence_[static_cast<std::size_t>(head)].push_back(e);
  return e;
}

const std::vector<EdgeId>& Graph::incident_edges(VertexId v) const {
  return incidence_.at(static_cast<std::size_t>(v));
}

int Graph::valence(VertexId v) const { return static_cast<int>(incident_edges(v).size()); }

void Graph::set_basepoint(std::optional<VertexId> v) {
  if (v && !has_vertex(*v)) throw InvalidArgument("basepoint is not a vertex");
  basepoint_ = v;
}

bool Graph::has_labels() const {
  return std::any_of(vertex_labels_.begin(), vertex_labels_.end(), [](auto& l) { return l.has_value(); }) ||
         std::any_of(edge_labels_.begin(), edge_labels_.end(), [](auto& l) { return l.has_value(); });
}

std::optional<SummandLabel> Graph::vertex_label(VertexId v) const {
  return vertex_labels_.at(static_cast<std::size_t>(v));
}

std::optional<SummandLabel> Graph::edge_label(EdgeId e) const {
  return edge_labels_.at(static_cast<std::size_t>(e));
}

void Graph::set_vertex_label(VertexId v, std::optional<SummandLabel> label) {
  vertex_labels_.at(static_cast<std::size_t>(v)) = label;
}

void Graph::set_edge_label(EdgeId e, std::optional<SummandLabel> label) {
  edge_labels_.at(static_cast<std::size_t>(e)) = label;
}

bool Graph::is_connected() const {
  if (num_vertices() == 0) return false;
  return Subgraph::whole(*this).is_connected(*this);
}

bool Graph::is_tree() const { return is_connected() && num_edges() == num_vertices() - 1; }

bool Graph::has_loops() const {
  return std::any_of(edges_.begin(), edges_.end(), [](const Edge& e) { return e.is_loop(); });
}

bool operator==(const Graph& a, const Graph& b) {
  return a.edges_ == b.edges_ && a.vertex_labels_ == b.vertex_labels_ &&
         a.edge_labels_ == b.edge_labels_ && a.basepoint_ == b.basepoint_;
}

Subgraph Subgraph::empty(const Graph& g) {
  return {std::vector<bool>(static_cast<std::size_t>(g.num_vertices()), false),
          std::vector<bool>(static_cast<std::size_t>(g.num_edges()), false)};
}

Subgraph Subgraph::whole(const Graph& g) {
  return {std::vector<bool>(static_cast<std::size_t>(g.num_vertices()), true),
          std::vector<bool>(static_cast<std::size_t>(g.num_edges()), true)};
}

int Subgraph::vertex_count() const { return static_cast<int>(std::count(vertices.begin(), vertices.end(), true)); }

int Subgraph::edge_count() const { return static_cast<int>(std::count(edges.begin(), edges.end(), true)); }

bool Subgraph::is_subgraph_of(const Graph& g) const {
  if (vertices.size() != static_cast<std::size_t>(g.num_vertices()) ||
      edges.size() != static_cast<std::size_t>(g.num_edges())) {
    return false;
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    if (contains_edge(e) && !(contains_vertex(g.edge(e).tail) && contains_vertex(g.edge(e).head))) return false;
  }
  return true;
}

bool Subgraph::is_connected(const Graph& g) const {
  auto start = std::find(vertices.begin(), vertices.end(), true);
  if (start == vertices.end()) return false;
  std::vector<bool> seen(vertices.size(), false);
  std::queue<VertexId> todo;
  todo.push(static_cast<VertexId>(start - vertices.begin()));
  seen[static_cast<std::size_t>(todo.front())] = true;
  while (!todo.empty()) {
    const VertexId v = todo.front();
    todo.pop();
    for (EdgeId e : g.incident_edges(v)) {
      if (!contains_edge(e)) continue;
      const Edge& ed = g.edge(e);
      const VertexId w = ed.tail == v ? ed.head : ed.tail;
      if (!seen[static_cast<std::size_t>(w)]) {
        seen[static_cast<std::size_t>(w)] = true;
        todo.push(w);
      }
    }
  }
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    if (vertices[v] && !seen[v]) return false;
  }
  return true;
}

Graph make_star(int k) {
  if (k < 1) throw InvalidArgument("star needs at least one leaf");
  Graph g(k + 1);
  for (int i = 1; i <= k; ++i) g.add_edge(0, i);
  g.set_basepoint(0);
  return g;
}

Graph make_h_graph() {
  // 0 - 1 is the middle edge; 2, 3 hang off 0 and 4, 5 off 1.
  Graph g(6);
  g.add_edge(0, 1);
  g.add_edge(0, 2);
  g.add_edge(0, 3);
  g.add_edge(1, 4);
  g.add_edge(1, 5);
  g.set_basepoint(0);
  return g;
}

Graph make_cycle_graph(int m) {
  if (m < 3) throw InvalidArgument("cycle graph needs at least 3 vertices");
  Graph g(m);
  for (int i = 0; i < m; ++i) g.add_edge(i, (i + 1) % m);
  g.set_basepoint(0);
  return g;
}

Graph make_path_graph(int m) {
  if (m < 1) throw InvalidArgument("path graph needs at least one edge");
  Graph g(m + 1);
  for (int i = 0; i < m; ++i) g.add_edge(i, i + 1);
  g.set_basepoint(0);
  return g;
}

Graph make_point() {
  Graph g(1);
  g.set_basepoint(0);
  return g;
}

namespace {

// Checks that the vertex/edge pairs mark a subtree of `g` on the given side.
void check_marked_subtree(const Graph& g, const GlueMap& along, bool second) {
  auto pick = [second](const auto& p) { return second ? p.second : p.first; };
  std::set<VertexId> vs;
  std::set<EdgeId> es;
  for (const auto& p : along.vertices) {
    const VertexId v = pick(p);
    if (!g.has_vertex(v)) throw InvalidArgument("glue vertex " + std::to_string(v) + " is not a vertex");
    if (!vs.insert(v).second) throw InvalidArgument("glue map is not injective on vertices");
  }
  for (const auto& p : along.edges) {
    const EdgeId e = pick(p);
    if (!g.has_edge(e)) throw InvalidArgument("glue edge " + std::to_string(e) + " is not an edge");
    if (!es.insert(e).second) throw InvalidArgument("glue map is not injective on edges");
    if (!vs.contains(g.edge(e).tail) || !vs.contains(g.edge(e).head)) {
      throw InvalidArgument("glued edge has an endpoint outside the glued subgraph");
    }
  }
  Subgraph h = Subgraph::empty(g);
  for (VertexId v : vs) h.vertices[static_cast<std::size_t>(v)] = true;
  for (EdgeId e : es) h.edges[static_cast<std::size_t>(e)] = true;
  if (!h.is_connected(g) || h.edge_count() != h.vertex_count() - 1) {
    throw InvalidArgument("glueing is only supported along subtrees");
  }
}

}  // namespace

GlueResult glue(const Graph& a, const Graph& b, const GlueMap& along) {
  if (along.vertices.empty()) throw InvalidArgument("glue map is empty");
  check_marked_subtree(a, along, false);
  check_marked_subtree(b, along, true);

  GlueResult out{a, std::vector<VertexId>(static_cast<std::size_t>(b.num_vertices()), -1),
                 std::vector<EdgeId>(static_cast<std::size_t>(b.num_edges()), -1)};
  for (const auto& [va, vb] : along.vertices) out.vertex_map_b[static_cast<std::size_t>(vb)] = va;
  for (const auto& [ea, eb] : along.edges) {
    const Edge& x = a.edge(ea);
    const Edge& y = b.edge(eb);
    const VertexId yt = out.vertex_map_b[static_cast<std::size_t>(y.tail)];
    const VertexId yh = out.vertex_map_b[static_cast<std::size_t>(y.head)];
    if (!((yt == x.tail && yh == x.head) || (yt == x.head && yh == x.tail))) {
      throw InvalidArgument("glue map is not an embedding: edge endpoints do not correspond");
    }
    out.edge_map_b[static_cast<std::size_t>(eb)] = ea;
  }
  for (VertexId v = 0; v < b.num_vertices(); ++v) {
    if (out.vertex_map_b[static_cast<std::size_t>(v)] < 0) {
      out.vertex_map_b[static_cast<std::size_t>(v)] = out.graph.add_vertex(b.vertex_label(v));
    }
  }
  for (EdgeId e = 0; e < b.num_edges(); ++e) {
    if (out.edge_map_b[static_cast<std::size_t>(e)] < 0) {
      const Edge& y = b.edge(e);
      out.edge_map_b[static_cast<std::size_t>(e)] =
          out.graph.add_edge(out.vertex_map_b[static_cast<std::size_t>(y.tail)],
                             out.vertex_map_b[static_cast<std::size_t>(y.head)], b.edge_label(e));
    }
  }
  return out;
}

Graph wedge(const Graph& a, const Graph& b) {
  if (!a.basepoint() || !b.basepoint()) throw InvalidArgument("wedge needs based graphs");
  return glue(a, b, GlueMap{{{*a.basepoint(), *b.basepoint()}}, {}}).graph;
}

Graph identify_vertices(const Graph& g, VertexId u, VertexId v) {
  if (!g.has_vertex(u) || !g.has_vertex(v)) throw InvalidArgument("identify_vertices: not a vertex");
  if (u == v) return g;
  auto remap = [&](VertexId x) {
    if (x == v) x = u;
    return x > v ? x - 1 : x;
  };
  Graph out;
  for (VertexId x = 0; x < g.num_vertices(); ++x) {
    if (x != v) out.add_vertex(g.vertex_label(x));
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    out.add_edge(remap(g.edge(e).tail), remap(g.edge(e).head), g.edge_label(e));
  }
  if (g.basepoint()) out.set_basepoint(remap(*g.basepoint()));
  return out;
}

Graph subdivide(const Graph& g, int t) {
  if (t < 1) throw InvalidArgument("subdivision factor must be positive");
  if (t == 1) return g;
  const int V = g.num_vertices();
  const int E = g.num_edges();
  Graph out;
  for (VertexId v = 0; v < V; ++v) out.add_vertex(g.vertex_label(v));
  for (EdgeId e = 0; e < E; ++e) {
    for (int j = 0; j + 1 < t; ++j) out.add_vertex(g.edge_label(e));
  }
  auto inner = [&](EdgeId e, int j) { return V + (t - 1) * e + j; };  // j-th interior vertex
  // First segment of every edge keeps the edge's id.
  for (EdgeId e = 0; e < E; ++e) out.add_edge(g.edge(e).tail, inner(e, 0), g.edge_label(e));
  for (EdgeId e = 0; e < E; ++e) {
    for (int j = 1; j < t; ++j) {
      const VertexId to = j + 1 < t ? inner(e, j) : g.edge(e).head;
      out.add_edge(inner(e, j - 1), to, g.edge_label(e));
    }
  }
  out.set_basepoint(g.basepoint());
  return out;
}

Graph normalize_loops(const Graph& g) {
  if (!g.has_loops()) return g;
  Graph out;
  for (VertexId v = 0; v < g.num_vertices(); ++v) out.add_vertex(g.vertex_label(v));
  std::vector<std::pair<EdgeId, VertexId>> halves;
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& ed = g.edge(e);
    if (ed.is_loop()) {
      const VertexId mid = out.add_vertex(g.edge_label(e));
      out.add_edge(ed.tail, mid, g.edge_label(e));
      halves.emplace_back(e, mid);
    } else {
      out.add_edge(ed.tail, ed.head, g.edge_label(e));
    }
  }
  for (const auto& [e, mid] : halves) out.add_edge(mid, g.edge(e).head, g.edge_label(e));
  out.set_basepoint(g.basepoint());
  return out;
}

std::vector<VertexId> essential_vertices(const Graph& g) {
  std::vector<VertexId> out;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (g.valence(v) >= 3) out.push_back(v);
  }
  return out;
}

TreePath tree_path(const Graph& tree, VertexId u, VertexId w) {
  if (!tree.has_vertex(u) || !tree.has_vertex(w)) throw InvalidArgument("tree_path: not a vertex");
  std::vector<EdgeId> via(static_cast<std::size_t>(tree.num_vertices()), -1);
  std::vector<bool> seen(static_cast<std::size_t>(tree.num_vertices()), false);
  std::queue<VertexId> todo;
  todo.push(u);
  seen[static_cast<std::size_t>(u)] = true;
  while (!todo.empty()) {
    const VertexId x = todo.front();
    todo.pop();
    for (EdgeId e : tree.incident_edges(x)) {
      const VertexId y = tree.edge(e).tail == x ? tree.edge(e).head : tree.edge(e).tail;
      if (seen[static_cast<std::size_t>(y)]) continue;
      seen[static_cast<std::size_t>(y)] = true;
      via[static_cast<std::size_t>(y)] = e;
      todo.push(y);
    }
  }
  if (!seen[static_cast<std::size_t>(w)]) throw InvalidArgument("tree_path: vertices are not connected");
  TreePath path;
  for (VertexId x = w; x != u;) {
    const EdgeId e = via[static_cast<std::size_t>(x)];
    path.vertices.push_back(x);
    path.edges.push_back(e);
    x = tree.edge(e).tail == x ? tree.edge(e).head : tree.edge(e).tail;
  }
  path.vertices.push_back(u);
  std::reverse(path.vertices.begin(), path.vertices.end());
  std::reverse(path.edges.begin(), path.edges.end());
  return path;
}

}  // namespace confstab

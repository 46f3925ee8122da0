#include "confstab/family.hpp"

#include <algorithm>
#include <functional>
#include <string>

#include "confstab/errors.hpp"

namespace confstab {

namespace {

struct CopyMaps {
  int coordinate;
  int copy;
  std::vector<VertexId> vertex_map;
  std::vector<EdgeId> edge_map;
};

struct Realization {
  Graph graph;
  std::vector<CopyMaps> copies;
};

void label_all(Graph& g, SummandLabel label) {
  for (VertexId v = 0; v < g.num_vertices(); ++v) g.set_vertex_label(v, label);
  for (EdgeId e = 0; e < g.num_edges(); ++e) g.set_edge_label(e, label);
}

// Appends a copy of `summand` glued along `along`, labeling its new items.
CopyMaps attach_copy(Graph& g, const Graph& summand, const GlueMap& along, SummandLabel label) {
  const int v_before = g.num_vertices();
  const int e_before = g.num_edges();
  GlueResult glued = glue(g, summand, along);
  for (VertexId v = v_before; v < glued.graph.num_vertices(); ++v) glued.graph.set_vertex_label(v, label);
  for (EdgeId e = e_before; e < glued.graph.num_edges(); ++e) glued.graph.set_edge_label(e, label);
  g = std::move(glued.graph);
  return {label.coordinate, label.copy, std::move(glued.vertex_map_b), std::move(glued.edge_map_b)};
}

Graph backbone(FamilyKind kind, int k, std::vector<VertexId>& attach) {
  Graph g;
  attach.clear();
  if (kind == FamilyKind::IntervalDelta) {
    g = make_path_graph(k + 1);
    for (int m = 0; m < k; ++m) attach.push_back(m + 1);
  } else {
    const int edges = std::max(k + 1, 2);
    g = Graph(edges);
    for (int i = 0; i < edges; ++i) g.add_edge(i, (i + 1) % edges);
    g.set_basepoint(0);
    for (int m = 0; m < k; ++m) attach.push_back(m + 1);
  }
  label_all(g, {0, 0});
  return g;
}

Realization realize(const FamilyDescriptor& family, const FamilySizes& sizes) {
  family.validate();
  if (static_cast<int>(sizes.size()) != family.arity()) {
    throw InvalidArgument("sizes have length " + std::to_string(sizes.size()) + ", family arity is " +
                          std::to_string(family.arity()));
  }
  for (int s : sizes) {
    if (s < 0) throw InvalidArgument("family sizes must be nonnegative");
  }
  Realization out;
  if (family.kind == FamilyKind::WedgeFI) {
    out.graph = family.base;
    label_all(out.graph, {0, 0});
    for (int i = 0; i < family.arity(); ++i) {
      const Summand& s = family.summands[static_cast<std::size_t>(i)];
      for (int m = 0; m < sizes[static_cast<std::size_t>(i)]; ++m) {
        out.copies.push_back(attach_copy(out.graph, s.graph, s.glue, {i + 1, m}));
      }
    }
    return out;
  }
  std::vector<VertexId> attach;
  out.graph = backbone(family.kind, sizes[0], attach);
  const Graph& g = family.summands[0].graph;
  for (int m = 0; m < sizes[0]; ++m) {
    GlueMap at{{{attach[static_cast<std::size_t>(m)], *g.basepoint()}}, {}};
    out.copies.push_back(attach_copy(out.graph, g, at, {1, m}));
  }
  return out;
}

// Calls visit(choice) for every increasing d-subset of {0..k-1}.
void for_each_subset(int k, int d, const std::function<void(const std::vector<int>&)>& visit) {
  std::vector<int> choice(static_cast<std::size_t>(d));
  std::function<void(int, int)> rec = [&](int pos, int from) {
    if (pos == d) {
      visit(choice);
      return;
    }
    for (int x = from; x <= k - (d - pos); ++x) {
      choice[static_cast<std::size_t>(pos)] = x;
      rec(pos + 1, x + 1);
    }
  };
  rec(0, 0);
}

}  // namespace

void FamilyDescriptor::validate() const {
  if (summands.empty()) throw InvalidArgument("family needs at least one summand");
  if (kind == FamilyKind::WedgeFI) {
    if (base.num_vertices() == 0 || !base.is_connected()) throw InvalidArgument("family base must be connected");
    for (const Summand& s : summands) {
      if (!s.graph.is_connected()) throw InvalidArgument("family summand must be connected");
      // glue() performs the subtree/embedding checks; run it once on bare copies.
      (void)glue(base, s.graph, s.glue);
    }
    return;
  }
  if (summands.size() != 1) throw InvalidArgument("interval and circle families have exactly one summand");
  const Graph& g = summands[0].graph;
  if (!g.is_connected()) throw InvalidArgument("family summand must be connected");
  if (!g.basepoint()) throw InvalidArgument("interval and circle families need a based summand");
  if (g.valence(*g.basepoint()) < 2) throw InvalidArgument("summand basepoint must have valence at least 2");
}

Graph realize_family(const FamilyDescriptor& family, const FamilySizes& sizes) {
  return realize(family, sizes).graph;
}

std::vector<Subgraph> support_embeddings(const FamilyDescriptor& family, const FamilySizes& degree,
                                         const FamilySizes& sizes) {
  if (degree.size() != sizes.size()) throw InvalidArgument("degree and sizes differ in length");
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (degree[i] < 0 || degree[i] > sizes[i]) throw InvalidArgument("support degree must lie in [0, size]");
  }
  const Graph g = realize_family(family, sizes);
  std::vector<Subgraph> out;
  std::vector<std::vector<int>> chosen(sizes.size());
  std::function<void(std::size_t)> rec = [&](std::size_t coord) {
    if (coord == sizes.size()) {
      Subgraph h = Subgraph::empty(g);
      auto keep = [&](std::optional<SummandLabel> l) {
        if (!l || l->coordinate == 0) return true;
        const auto& c = chosen[static_cast<std::size_t>(l->coordinate - 1)];
        return std::find(c.begin(), c.end(), l->copy) != c.end();
      };
      for (VertexId v = 0; v < g.num_vertices(); ++v) h.vertices[static_cast<std::size_t>(v)] = keep(g.vertex_label(v));
      for (EdgeId e = 0; e < g.num_edges(); ++e) h.edges[static_cast<std::size_t>(e)] = keep(g.edge_label(e));
      out.push_back(std::move(h));
      return;
    }
    for_each_subset(sizes[coord], degree[coord], [&](const std::vector<int>& c) {
      chosen[coord] = c;
      rec(coord + 1);
    });
  };
  rec(0);
  return out;
}

GraphAutomorphism summand_permutation(const FamilyDescriptor& family, const FamilySizes& sizes,
                                      const std::vector<std::vector<int>>& perms) {
  if (family.kind != FamilyKind::WedgeFI) throw InvalidArgument("summand permutations need a WedgeFI family");
  const Realization r = realize(family, sizes);
  if (perms.size() != sizes.size()) throw InvalidArgument("one permutation per coordinate is required");
  for (std::size_t i = 0; i < perms.size(); ++i) {
    std::vector<bool> hit(static_cast<std::size_t>(sizes[i]), false);
    if (perms[i].size() != static_cast<std::size_t>(sizes[i])) throw InvalidArgument("permutation has wrong size");
    for (int x : perms[i]) {
      if (x < 0 || x >= sizes[i] || hit[static_cast<std::size_t>(x)]) throw InvalidArgument("not a permutation");
      hit[static_cast<std::size_t>(x)] = true;
    }
  }
  GraphAutomorphism a;
  a.vertex_map.resize(static_cast<std::size_t>(r.graph.num_vertices()));
  a.edge_map.resize(static_cast<std::size_t>(r.graph.num_edges()));
  for (VertexId v = 0; v < r.graph.num_vertices(); ++v) a.vertex_map[static_cast<std::size_t>(v)] = v;
  for (EdgeId e = 0; e < r.graph.num_edges(); ++e) a.edge_map[static_cast<std::size_t>(e)] = e;

  // Index copies by (coordinate, copy).
  std::vector<std::vector<const CopyMaps*>> by_coord(sizes.size());
  for (const CopyMaps& c : r.copies) by_coord[static_cast<std::size_t>(c.coordinate - 1)].push_back(&c);
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    for (const CopyMaps* src : by_coord[i]) {
      const CopyMaps* dst = by_coord[i][static_cast<std::size_t>(perms[i][static_cast<std::size_t>(src->copy)])];
      for (std::size_t v = 0; v < src->vertex_map.size(); ++v) {
        a.vertex_map[static_cast<std::size_t>(src->vertex_map[v])] = dst->vertex_map[v];
      }
      for (std::size_t e = 0; e < src->edge_map.size(); ++e) {
        a.edge_map[static_cast<std::size_t>(src->edge_map[e])] = dst->edge_map[e];
      }
    }
  }
  return a;
}

bool is_automorphism(const Graph& g, const GraphAutomorphism& a) {
  const auto V = static_cast<std::size_t>(g.num_vertices());
  const auto E = static_cast<std::size_t>(g.num_edges());
  if (a.vertex_map.size() != V || a.edge_map.size() != E) return false;
  std::vector<bool> vhit(V, false), ehit(E, false);
  for (VertexId v : a.vertex_map) {
    if (!g.has_vertex(v) || vhit[static_cast<std::size_t>(v)]) return false;
    vhit[static_cast<std::size_t>(v)] = true;
  }
  for (EdgeId e : a.edge_map) {
    if (!g.has_edge(e) || ehit[static_cast<std::size_t>(e)]) return false;
    ehit[static_cast<std::size_t>(e)] = true;
  }
  for (EdgeId e = 0; e < g.num_edges(); ++e) {
    const Edge& src = g.edge(e);
    const Edge& dst = g.edge(a.edge_map[static_cast<std::size_t>(e)]);
    const VertexId t = a.vertex_map[static_cast<std::size_t>(src.tail)];
    const VertexId h = a.vertex_map[static_cast<std::size_t>(src.head)];
    if (!((dst.tail == t && dst.head == h) || (dst.tail == h && dst.head == t))) return false;
  }
  return true;
}

FamilyDescriptor make_wedge_family(const Graph& base, const Graph& summand) {
  if (!base.basepoint() || !summand.basepoint()) throw InvalidArgument("wedge families need based graphs");
  FamilyDescriptor f;
  f.kind = FamilyKind::WedgeFI;
  f.base = base;
  f.summands.push_back({summand, GlueMap{{{*base.basepoint(), *summand.basepoint()}}, {}}});
  f.validate();
  return f;
}

FamilyDescriptor make_interval_family(const Graph& g) {
  FamilyDescriptor f;
  f.kind = FamilyKind::IntervalDelta;
  f.summands.push_back({g, {}});
  f.validate();
  return f;
}

FamilyDescriptor make_circle_family(const Graph& g) {
  FamilyDescriptor f = make_interval_family(g);
  f.kind = FamilyKind::CircleLambda;
  f.validate();
  return f;
}

}  // namespace confstab

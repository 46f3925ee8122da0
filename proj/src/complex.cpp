#include "confstab/complex.hpp"

#include <algorithm>
#include <functional>

#include "confstab/errors.hpp"

namespace confstab {

int ModelCell::dimension() const {
  return static_cast<int>(std::count_if(particles.begin(), particles.end(), [](const ParticlePlacement& p) {
    return p.move >= 0;
  }));
}

std::string ModelCell::key() const {
  std::string k;
  k.resize(particles.size() * 4);
  for (std::size_t i = 0; i < particles.size(); ++i) {
    const ParticlePlacement& p = particles[i];
    if (p.site < 0 || p.site > 0xFFFF || p.slot < 0 || p.slot > 0xFF || p.move < -1 || p.move > 1) {
      throw InvalidArgument("cell does not fit the key encoding");
    }
    // Big-endian site so that byte order sorts like the integer.
    k[4 * i] = static_cast<char>((p.site >> 8) & 0xFF);
    k[4 * i + 1] = static_cast<char>(p.site & 0xFF);
    k[4 * i + 2] = static_cast<char>(p.slot);
    k[4 * i + 3] = static_cast<char>((p.on_edge ? 1 : 0) | ((p.move + 1) << 1));
  }
  return k;
}

ModelCell ModelCell::from_key(std::string_view key) {
  if (key.size() % 4 != 0) throw InvalidArgument("malformed cell key");
  ModelCell c;
  c.particles.resize(key.size() / 4);
  for (std::size_t i = 0; i < c.particles.size(); ++i) {
    auto byte = [&](std::size_t j) { return static_cast<int>(static_cast<unsigned char>(key[4 * i + j])); };
    ParticlePlacement& p = c.particles[i];
    p.site = (byte(0) << 8) | byte(1);
    p.slot = byte(2);
    p.on_edge = (byte(3) & 1) != 0;
    p.move = (byte(3) >> 1) - 1;
  }
  return c;
}

std::vector<SignedFace> cell_boundary(ModelKind kind, const Graph& g, const ModelCell& c) {
  std::vector<SignedFace> out;
  int axis = 0;
  for (std::size_t p = 0; p < c.particles.size(); ++p) {
    const ParticlePlacement& pl = c.particles[p];
    if (pl.move < 0) continue;
    ++axis;
    const int sign = axis % 2 == 1 ? 1 : -1;
    ModelCell rest = c;
    rest.particles[p].move = -1;
    ModelCell landed = rest;
    ParticlePlacement& moved = landed.particles[p];
    if (kind == ModelKind::Paper) {
      // Particles behind the one leaving at the tail end shift one slot down.
      if (pl.move == 0) {
        for (auto& other : landed.particles) {
          if (other.on_edge && other.site == pl.site && other.slot > pl.slot) --other.slot;
        }
      }
      moved = {false, g.edge(pl.site).endpoint(pl.move), 0, -1};
      out.push_back({std::move(landed), sign});
      out.push_back({std::move(rest), -sign});
    } else {
      ModelCell at_tail = rest;
      at_tail.particles[p] = {false, g.edge(pl.site).tail, 0, -1};
      moved = {false, g.edge(pl.site).head, 0, -1};
      out.push_back({std::move(landed), sign});
      out.push_back({std::move(at_tail), -sign});
    }
  }
  return out;
}

std::size_t CubeComplex::num_cells(int q) const {
  if (q < 0 || q > top_dimension()) return 0;
  return keys_[static_cast<std::size_t>(q)].size();
}

std::size_t CubeComplex::total_cells() const {
  std::size_t n = 0;
  for (const auto& k : keys_) n += k.size();
  return n;
}

std::vector<std::size_t> CubeComplex::f_vector() const {
  std::vector<std::size_t> f;
  for (const auto& k : keys_) f.push_back(k.size());
  return f;
}

std::int64_t CubeComplex::euler_characteristic() const {
  std::int64_t chi = 0;
  for (std::size_t q = 0; q < keys_.size(); ++q) {
    chi += (q % 2 == 0 ? 1 : -1) * static_cast<std::int64_t>(keys_[q].size());
  }
  return chi;
}

const std::string& CubeComplex::cell_key(int q, std::size_t i) const {
  return keys_.at(static_cast<std::size_t>(q)).at(i);
}

std::optional<std::size_t> CubeComplex::index_of(int q, const std::string& key) const {
  if (q < 0 || q > top_dimension()) return std::nullopt;
  const auto& idx = index_[static_cast<std::size_t>(q)];
  auto it = idx.find(key);
  if (it == idx.end()) return std::nullopt;
  return it->second;
}

SparseIntMatrix CubeComplex::boundary(int q) const { return boundary_ref(q); }

const SparseIntMatrix& CubeComplex::boundary_ref(int q) const {
  static const SparseIntMatrix empty;
  if (q < 0 || q >= static_cast<int>(boundary_.size())) return empty;
  return boundary_[static_cast<std::size_t>(q)];
}

CubeComplex CubeComplex::assemble(ModelKind kind, Graph graph, int particles, std::vector<bool> sinks,
                                  std::vector<std::vector<std::string>> keys_by_dimension) {
  CubeComplex c;
  c.kind_ = kind;
  c.graph_ = std::move(graph);
  c.particles_ = particles;
  c.sinks_ = std::move(sinks);
  while (!keys_by_dimension.empty() && keys_by_dimension.back().empty()) keys_by_dimension.pop_back();
  c.keys_ = std::move(keys_by_dimension);
  c.index_.resize(c.keys_.size());
  for (std::size_t q = 0; q < c.keys_.size(); ++q) {
    auto& keys = c.keys_[q];
    std::sort(keys.begin(), keys.end());
    keys.erase(std::unique(keys.begin(), keys.end()), keys.end());
    auto& idx = c.index_[q];
    idx.reserve(keys.size());
    for (std::size_t i = 0; i < keys.size(); ++i) idx.emplace(keys[i], i);
  }
  const int top = c.top_dimension();
  c.boundary_.resize(static_cast<std::size_t>(top + 2));
  c.boundary_[0] = SparseIntMatrix(0, static_cast<int>(c.num_cells(0)));
  for (int q = 1; q <= top + 1; ++q) {
    std::vector<Chain> cols(c.num_cells(q));
    for (std::size_t j = 0; j < cols.size(); ++j) {
      std::vector<std::pair<int, std::int64_t>> entries;
      for (const SignedFace& f : cell_boundary(kind, c.graph_, c.cell(q, j))) {
        auto row = c.index_of(q - 1, f.face.key());
        if (!row) throw InvalidState("complex is not closed under faces");
        entries.emplace_back(static_cast<int>(*row), f.sign);
      }
      cols[j] = chain_normalize(std::move(entries));
    }
    c.boundary_[static_cast<std::size_t>(q)] =
        SparseIntMatrix::from_columns(static_cast<int>(c.num_cells(q - 1)), std::move(cols));
  }
  return c;
}

namespace {

using CellVisitor = std::function<void(const ModelCell&)>;

void check_model_input(const Graph& g, int n) {
  if (n < 0) throw InvalidArgument("particle count must be nonnegative");
  if (g.has_loops()) throw InvalidState("graph has loop edges; normalize_loops() it first");
  if (n > 0 && !g.is_connected()) throw InvalidArgument("configuration models need a connected graph");
  if (g.num_vertices() > 0xFFFF || g.num_edges() > 0xFFFF) throw BudgetExceeded("graph too large for cell keys");
}

// Enumerates every cell of the paper model of ConfSink_n(g, sinks).
void enumerate_model(const Graph& g, int n, const std::vector<bool>& sink, const CellVisitor& visit) {
  std::vector<int> vertex_load(static_cast<std::size_t>(g.num_vertices()), 0);
  std::vector<std::vector<int>> on_edge(static_cast<std::size_t>(g.num_edges()));
  std::vector<ParticlePlacement> place(static_cast<std::size_t>(n));
  std::vector<int> move_load(static_cast<std::size_t>(g.num_vertices()), 0);
  ModelCell cell;
  cell.particles.resize(static_cast<std::size_t>(n));

  // Second stage: choose admissible moves on a fixed 0-cell.
  std::function<void(int)> choose_moves = [&](int p) {
    if (p == n) {
      visit(cell);
      return;
    }
    ParticlePlacement& pl = cell.particles[static_cast<std::size_t>(p)];
    pl.move = -1;
    choose_moves(p + 1);
    if (!pl.on_edge) return;
    const int len = static_cast<int>(on_edge[static_cast<std::size_t>(pl.site)].size());
    for (int end = 0; end < 2; ++end) {
      if ((end == 0 && pl.slot != 0) || (end == 1 && pl.slot != len - 1)) continue;
      const VertexId v = g.edge(pl.site).endpoint(end);
      const auto vi = static_cast<std::size_t>(v);
      if (!sink[vi] && (vertex_load[vi] > 0 || move_load[vi] > 0)) continue;
      pl.move = end;
      ++move_load[vi];
      choose_moves(p + 1);
      --move_load[vi];
      pl.move = -1;
    }
  };

  // First stage: distribute labeled particles; edge lists are built by inserting
  // each particle at every position, which yields each ordering once.
  std::function<void(int)> distribute = [&](int p) {
    if (p == n) {
      for (int q = 0; q < n; ++q) {
        ParticlePlacement pl = place[static_cast<std::size_t>(q)];
        if (pl.on_edge) {
          const auto& lst = on_edge[static_cast<std::size_t>(pl.site)];
          pl.slot = static_cast<int>(std::find(lst.begin(), lst.end(), q) - lst.begin());
        }
        cell.particles[static_cast<std::size_t>(q)] = pl;
      }
      choose_moves(0);
      return;
    }
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      const auto vi = static_cast<std::size_t>(v);
      if (!sink[vi] && vertex_load[vi] > 0) continue;
      ++vertex_load[vi];
      place[static_cast<std::size_t>(p)] = {false, v, 0, -1};
      distribute(p + 1);
      --vertex_load[vi];
    }
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      auto& lst = on_edge[static_cast<std::size_t>(e)];
      for (std::size_t pos = 0; pos <= lst.size(); ++pos) {
        lst.insert(lst.begin() + static_cast<std::ptrdiff_t>(pos), p);
        place[static_cast<std::size_t>(p)] = {true, e, 0, -1};
        distribute(p + 1);
        lst.erase(lst.begin() + static_cast<std::ptrdiff_t>(pos));
      }
    }
  };
  distribute(0);
}

void enumerate_abrams(const Graph& g, int n, const CellVisitor& visit) {
  std::vector<bool> used(static_cast<std::size_t>(g.num_vertices()), false);
  ModelCell cell;
  cell.particles.resize(static_cast<std::size_t>(n));
  std::function<void(int)> rec = [&](int p) {
    if (p == n) {
      visit(cell);
      return;
    }
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      if (used[static_cast<std::size_t>(v)]) continue;
      used[static_cast<std::size_t>(v)] = true;
      cell.particles[static_cast<std::size_t>(p)] = {false, v, 0, -1};
      rec(p + 1);
      used[static_cast<std::size_t>(v)] = false;
    }
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      const auto t = static_cast<std::size_t>(g.edge(e).tail);
      const auto h = static_cast<std::size_t>(g.edge(e).head);
      if (used[t] || used[h]) continue;
      used[t] = used[h] = true;
      cell.particles[static_cast<std::size_t>(p)] = {true, e, 0, 1};
      rec(p + 1);
      used[t] = used[h] = false;
    }
  };
  rec(0);
}

std::vector<bool> sink_mask(const Graph& g, const std::vector<VertexId>& sinks) {
  std::vector<bool> mask(static_cast<std::size_t>(g.num_vertices()), false);
  for (VertexId v : sinks) {
    if (!g.has_vertex(v)) throw InvalidArgument("sink " + std::to_string(v) + " is not a vertex");
    mask[static_cast<std::size_t>(v)] = true;
  }
  return mask;
}

CellVisitor collecting_visitor(std::vector<std::vector<std::string>>& keys, std::size_t max_cells, int n) {
  keys.assign(static_cast<std::size_t>(n) + 1, {});
  return [&keys, max_cells, count = std::size_t{0}](const ModelCell& c) mutable {
    if (++count > max_cells) {
      throw BudgetExceeded("complex exceeds the cell budget of " + std::to_string(max_cells) + " cells");
    }
    keys[static_cast<std::size_t>(c.dimension())].push_back(c.key());
  };
}

}  // namespace

CubeComplex build_model(const Graph& g, int n, const std::vector<VertexId>& sinks, const BuildOptions& options) {
  check_model_input(g, n);
  std::vector<bool> mask = sink_mask(g, sinks);
  std::vector<std::vector<std::string>> keys;
  enumerate_model(g, n, mask, collecting_visitor(keys, options.max_cells, n));
  return CubeComplex::assemble(ModelKind::Paper, g, n, std::move(mask), std::move(keys));
}

std::size_t count_model_cells(const Graph& g, int n, const std::vector<VertexId>& sinks) {
  check_model_input(g, n);
  std::size_t count = 0;
  enumerate_model(g, n, sink_mask(g, sinks), [&count](const ModelCell&) { ++count; });
  return count;
}

CubeComplex build_abrams_oracle(const Graph& g, int n, const BuildOptions& options) {
  check_model_input(g, n);
  Graph fine = subdivide(g, n + 1);
  check_model_input(fine, n);
  std::vector<std::vector<std::string>> keys;
  enumerate_abrams(fine, n, collecting_visitor(keys, options.max_cells, n));
  std::vector<bool> mask(static_cast<std::size_t>(fine.num_vertices()), false);
  return CubeComplex::assemble(ModelKind::Abrams, std::move(fine), n, std::move(mask), std::move(keys));
}

SupportedSubcomplex subcomplex_supported_in(const CubeComplex& c, const Subgraph& h) {
  if (!h.is_subgraph_of(c.graph())) throw InvalidArgument("support is not a subgraph of the complex's graph");
  SupportedSubcomplex out;
  std::vector<std::vector<std::string>> keys;
  for (int q = 0; q <= c.top_dimension(); ++q) {
    keys.emplace_back();
    out.inclusion.emplace_back();
    for (std::size_t i = 0; i < c.num_cells(q); ++i) {
      const ModelCell cell = c.cell(q, i);
      const bool inside = std::all_of(cell.particles.begin(), cell.particles.end(), [&](const ParticlePlacement& p) {
        return p.on_edge ? h.contains_edge(p.site) : h.contains_vertex(p.site);
      });
      if (inside) {
        keys.back().push_back(c.cell_key(q, i));
        out.inclusion.back().push_back(i);
      }
    }
  }
  while (!out.inclusion.empty() && out.inclusion.back().empty()) out.inclusion.pop_back();
  out.complex = CubeComplex::assemble(c.kind(), c.graph(), c.particles(), c.sinks(), std::move(keys));
  return out;
}

SignedFace map_cell(ModelKind kind, const Graph& g, const GraphAutomorphism& a, const ModelCell& c) {
  SignedFace out{c, 1};
  std::vector<int> load(static_cast<std::size_t>(g.num_edges()), 0);
  for (const auto& p : c.particles) {
    if (p.on_edge) ++load[static_cast<std::size_t>(p.site)];
  }
  for (std::size_t i = 0; i < c.particles.size(); ++i) {
    const ParticlePlacement& p = c.particles[i];
    ParticlePlacement& img = out.face.particles[i];
    if (!p.on_edge) {
      img.site = a.vertex_map.at(static_cast<std::size_t>(p.site));
      continue;
    }
    const Edge& src = g.edge(p.site);
    img.site = a.edge_map.at(static_cast<std::size_t>(p.site));
    const Edge& dst = g.edge(img.site);
    const bool reversed = a.vertex_map[static_cast<std::size_t>(src.tail)] != dst.tail;
    if (!reversed) continue;
    if (kind == ModelKind::Paper) {
      img.slot = load[static_cast<std::size_t>(p.site)] - 1 - p.slot;
      if (p.move >= 0) img.move = 1 - p.move;
    } else if (p.move >= 0) {
      out.sign = -out.sign;
    }
  }
  return out;
}

}  // namespace confstab

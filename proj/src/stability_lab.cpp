#include "confstab/stability_lab.hpp"

#include <algorithm>
#include <chrono>
#include <deque>
#include <functional>
#include <set>
#include <string>

#include "confstab/errors.hpp"
#include "confstab/parallel.hpp"

namespace confstab {

Subgraph BasicCycle::support(const Graph& g) const {
  Subgraph s = Subgraph::empty(g);
  for (VertexId v : region_.owned) s.vertices[static_cast<std::size_t>(v)] = true;
  for (const auto& [e, use] : region_.uses) {
    s.edges[static_cast<std::size_t>(e)] = true;
    s.vertices[static_cast<std::size_t>(g.edge(e).tail)] = true;
    s.vertices[static_cast<std::size_t>(g.edge(e).head)] = true;
  }
  return s;
}

// Records a closed walk step by step, checking every move against the model's rules.
class WalkBuilder {
 public:
  WalkBuilder(const Graph& g, BasicCycle& cycle) : g_(g), cycle_(cycle) {}

  void place_on_edge(int p, EdgeId e) { state_.stacks[e].push_back(p); }

  // p leaves its edge through the end at vertex v.
  void to_vertex(int p, VertexId v) {
    const auto [e, pos] = locate(p);
    const Edge& edge = g_.edge(e);
    const int end = edge.tail == v ? 0 : 1;
    if (edge.endpoint(end) != v) throw InvalidArgument("particle's edge does not end at the target vertex");
    auto& stack = state_.stacks[e];
    if ((end == 0 && pos != 0) || (end == 1 && pos + 1 != stack.size())) {
      throw InvalidArgument("particle is blocked on its edge");
    }
    check_free(v);
    cycle_.steps_.push_back({state_, p, e, end, 1});
    stack.erase(stack.begin() + static_cast<std::ptrdiff_t>(pos));
    if (stack.empty()) state_.stacks.erase(e);
    state_.at_vertex[p] = v;
  }

  // p steps from its vertex onto edge e.
  void onto_edge(int p, EdgeId e) {
    auto it = state_.at_vertex.find(p);
    if (it == state_.at_vertex.end()) throw InvalidArgument("particle is not on a vertex");
    const Edge& edge = g_.edge(e);
    if (edge.is_loop()) throw InvalidArgument("walks do not use loops");
    const VertexId v = it->second;
    int end;
    if (edge.tail == v) {
      end = 0;
    } else if (edge.head == v) {
      end = 1;
    } else {
      throw InvalidArgument("edge is not incident to the particle's vertex");
    }
    state_.at_vertex.erase(it);
    auto& stack = state_.stacks[e];
    if (end == 0) {
      stack.insert(stack.begin(), p);
    } else {
      stack.push_back(p);
    }
    cycle_.steps_.push_back({state_, p, e, end, -1});
  }

  void through(int p, VertexId v, EdgeId next) {
    to_vertex(p, v);
    onto_edge(p, next);
  }

  // Moves p along a path of edges (p must sit on path.front()), ending on path.back().
  void travel(int p, const std::vector<EdgeId>& path, const std::vector<VertexId>& joints) {
    for (std::size_t i = 0; i + 1 < path.size(); ++i) through(p, joints[i], path[i + 1]);
  }

  void finish() {
    if (cycle_.steps_.empty()) throw InvalidState("empty walk");
    const BasicCycle::State& first = cycle_.steps_.front().state;
    // The walk starts with an edge-to-vertex step, so its starting state is that step's state.
    if (first.stacks != state_.stacks || first.at_vertex != state_.at_vertex) throw InvalidState("walk does not close");
  }

 private:
  std::pair<EdgeId, std::size_t> locate(int p) const {
    for (const auto& [e, stack] : state_.stacks) {
      for (std::size_t i = 0; i < stack.size(); ++i) {
        if (stack[i] == p) return {e, i};
      }
    }
    throw InvalidArgument("particle is not on an edge");
  }

  void check_free(VertexId v) const {
    for (const auto& [p, w] : state_.at_vertex) {
      if (w == v) throw InvalidArgument("target vertex is occupied");
    }
  }

  const Graph& g_;
  BasicCycle& cycle_;
  BasicCycle::State state_;
};

namespace {

void check_particles(int p, int q) {
  if (p < 0 || q < 0 || p == q) throw InvalidArgument("basic cycles move two distinct particles");
}

int germ_end(const Graph& g, EdgeId e, VertexId v) {
  if (!g.has_edge(e)) throw InvalidArgument("edge id out of range");
  const Edge& edge = g.edge(e);
  if (edge.is_loop()) throw InvalidArgument("basic cycles do not use loops");
  if (edge.tail == v) return 0;
  if (edge.head == v) return 1;
  throw InvalidArgument("edge is not incident to the vertex");
}

}  // namespace

Region star_region(const Graph& g, VertexId v) {
  if (!g.has_vertex(v)) throw InvalidArgument("vertex id out of range");
  if (g.valence(v) < 3) throw InvalidArgument("an embedded star needs a vertex of valence at least three");
  Region r;
  r.kind = BasicCycleKind::Star;
  r.owned = {v};
  for (EdgeId e : g.incident_edges(v)) r.uses[e] = germ_end(g, e, v);
  return r;
}

Region h_region(const Graph& g, const std::vector<EdgeId>& path, VertexId v, std::array<EdgeId, 2> at_v,
                std::array<EdgeId, 2> at_w) {
  if (path.empty()) throw InvalidArgument("the two vertices of an H must differ");
  if (!g.has_vertex(v)) throw InvalidArgument("vertex id out of range");
  // Owned vertices in path order: v, the inner vertices, w.
  Region r;
  r.kind = BasicCycleKind::H;
  r.owned = {v};
  for (EdgeId e : path) {
    const int end = germ_end(g, e, r.owned.back());
    r.owned.push_back(g.edge(e).endpoint(1 - end));
  }
  const VertexId w = r.owned.back();
  if (std::set<VertexId>(r.owned.begin(), r.owned.end()).size() != r.owned.size()) throw InvalidArgument("H path must be simple");
  if (g.valence(v) < 3 || g.valence(w) < 3) throw InvalidArgument("an H needs two vertices of valence at least three");
  std::set<EdgeId> used(path.begin(), path.end());
  for (EdgeId e : {at_v[0], at_v[1], at_w[0], at_w[1]}) {
    if (!used.insert(e).second) throw InvalidArgument("H edges must be distinct");
  }
  for (EdgeId e : path) r.uses[e] = -1;
  for (EdgeId e : at_v) r.uses[e] = germ_end(g, e, v);
  for (EdgeId e : at_w) r.uses[e] = germ_end(g, e, w);
  return r;
}

BasicCycle star_cycle(const Graph& g, VertexId v, std::array<EdgeId, 3> edges, int p, int q) {
  check_particles(p, q);
  if (!g.has_vertex(v)) throw InvalidArgument("vertex id out of range");
  if (g.valence(v) < 3) throw InvalidArgument("star cycles need a vertex of valence at least three");
  if (edges[0] == edges[1] || edges[0] == edges[2] || edges[1] == edges[2]) throw InvalidArgument("star edges must be distinct");
  BasicCycle c;
  c.region_.kind = BasicCycleKind::Star;
  c.particles_ = {p, q};
  c.region_.owned = {v};
  for (EdgeId e : edges) c.region_.uses[e] = germ_end(g, e, v);
  const auto [e1, e2, e3] = edges;
  WalkBuilder w(g, c);
  w.place_on_edge(p, e1);
  w.place_on_edge(q, e2);
  w.through(p, v, e3);
  w.through(q, v, e1);
  w.through(p, v, e2);
  w.through(q, v, e3);
  w.through(p, v, e1);
  w.through(q, v, e2);
  w.finish();
  return c;
}

BasicCycle h_cycle(const Graph& g, const std::vector<EdgeId>& path, VertexId v, std::array<EdgeId, 2> at_v,
                   std::array<EdgeId, 2> at_w, int p, int q) {
  check_particles(p, q);
  BasicCycle c;
  c.region_ = h_region(g, path, v, at_v, at_w);
  c.particles_ = {p, q};
  const std::vector<VertexId>& verts = c.region_.owned;
  const VertexId w_vertex = verts.back();

  const std::vector<VertexId> inner(verts.begin() + 1, verts.end() - 1);
  const std::vector<VertexId> inner_back(inner.rbegin(), inner.rend());
  const std::vector<EdgeId> back(path.rbegin(), path.rend());
  WalkBuilder b(g, c);
  // p near v, q near w.
  if (path.size() == 1) {
    const bool v_is_tail = g.edge(path[0]).tail == v;
    b.place_on_edge(v_is_tail ? p : q, path[0]);
    b.place_on_edge(v_is_tail ? q : p, path[0]);
  } else {
    b.place_on_edge(p, path.front());
    b.place_on_edge(q, path.back());
  }
  // Swap at v.
  b.through(p, v, at_v[0]);
  b.travel(q, back, inner_back);
  b.through(q, v, at_v[1]);
  b.through(p, v, path.front());
  b.through(q, v, path.front());
  // Swap at w: p is ahead of q.
  b.travel(p, path, inner);
  b.through(p, w_vertex, at_w[0]);
  b.travel(q, path, inner);
  b.through(q, w_vertex, at_w[1]);
  b.through(p, w_vertex, path.back());
  b.through(q, w_vertex, path.back());
  // Back to the start: p returns to the first edge.
  if (path.size() > 1) b.travel(p, back, inner_back);
  b.finish();
  return c;
}

BasicCycle h_cycle(const Graph& tree, VertexId v, VertexId w, std::array<EdgeId, 2> at_v, std::array<EdgeId, 2> at_w,
                   int p, int q) {
  if (v == w) throw InvalidArgument("the two vertices of an H cycle must differ");
  return h_cycle(tree, tree_path(tree, v, w).edges, v, at_v, at_w, p, q);
}

bool compatible(const std::vector<BasicCycle>& factors) {
  std::set<int> particles;
  std::set<VertexId> owned;
  std::map<EdgeId, std::vector<int>> uses;
  for (const auto& f : factors) {
    for (int p : f.particles()) {
      if (!particles.insert(p).second) return false;
    }
    for (VertexId v : f.owned_vertices()) {
      if (!owned.insert(v).second) return false;
    }
    for (const auto& [e, use] : f.edge_uses()) uses[e].push_back(use);
  }
  for (const auto& [e, list] : uses) {
    if (list.size() == 1) continue;
    if (list.size() > 2) return false;
    if (list[0] == -1 || list[1] == -1 || list[0] == list[1]) return false;
  }
  return true;
}

namespace {

int permutation_sign(std::vector<int> v) {
  int sign = 1;
  for (std::size_t i = 0; i < v.size(); ++i) {
    for (std::size_t j = i + 1; j < v.size(); ++j) {
      if (v[i] > v[j]) sign = -sign;
    }
  }
  return sign;
}

// Everything needed to assemble product cells for one set of factors and parking.
class Composer {
 public:
  Composer(const Graph& g, int n, const std::vector<BasicCycle>& factors, const Parking& parking)
      : g_(g), n_(n), factors_(factors), parking_(parking) {
    if (!compatible(factors)) throw InvalidArgument("factors overlap");
    std::set<int> labels;
    for (const auto& f : factors) labels.insert(f.particles().begin(), f.particles().end());
    for (const auto& [p, pl] : parking) {
      if (!labels.insert(p).second) throw InvalidArgument("parked particle is also moving");
    }
    if (static_cast<int>(labels.size()) != n || (n > 0 && (*labels.begin() != 0 || *labels.rbegin() != n - 1))) {
      throw InvalidArgument("moving and parked particles must be exactly 0..n-1");
    }
    for (std::size_t i = 0; i < factors.size(); ++i) {
      for (VertexId v : factors[i].owned_vertices()) owned_.insert(v);
      for (const auto& [e, use] : factors[i].edge_uses()) {
        if (use == -1) {
          whole_[e] = i;
        } else {
          (use == 0 ? tail_ : head_)[e] = i;
        }
      }
    }
    std::set<VertexId> parked_vertices;
    for (const auto& [p, pl] : parking) {
      if (pl.move != -1) throw InvalidArgument("parked particles do not move");
      if (pl.on_edge) {
        if (!g.has_edge(pl.site)) throw InvalidArgument("parking edge out of range");
        if (g.edge(pl.site).is_loop()) throw InvalidArgument("parking on a loop");
        if (whole_.count(pl.site) != 0) throw InvalidArgument("parking on an edge owned by a cycle");
        parked_edges_[pl.site].emplace_back(pl.slot, p);
      } else {
        if (!g.has_vertex(pl.site)) throw InvalidArgument("parking vertex out of range");
        if (owned_.count(pl.site) != 0) throw InvalidArgument("parking on a vertex used by a cycle");
        if (!parked_vertices.insert(pl.site).second) throw InvalidArgument("two particles parked on one vertex");
      }
    }
    for (auto& [e, list] : parked_edges_) {
      std::sort(list.begin(), list.end());
      for (std::size_t i = 1; i < list.size(); ++i) {
        if (list[i].first == list[i - 1].first) throw InvalidArgument("two parked particles share a slot");
      }
    }
  }

  // states[i] is factor i's state; moves[i] = (particle, end) or particle -1.
  ModelCell compose(const std::vector<const BasicCycle::State*>& states,
                    const std::vector<std::pair<int, int>>& moves) const {
    ModelCell cell;
    cell.particles.resize(static_cast<std::size_t>(n_));
    for (const auto& [p, pl] : parking_) {
      if (!pl.on_edge) cell.particles[static_cast<std::size_t>(p)] = {false, pl.site, 0, -1};
    }
    std::set<EdgeId> edges;
    for (const auto& [e, list] : parked_edges_) edges.insert(e);
    for (std::size_t i = 0; i < states.size(); ++i) {
      for (const auto& [p, v] : states[i]->at_vertex) cell.particles[static_cast<std::size_t>(p)] = {false, v, 0, -1};
      for (const auto& [e, stack] : states[i]->stacks) edges.insert(e);
    }
    for (EdgeId e : edges) {
      std::vector<int> order;
      auto append_factor = [&](const std::map<EdgeId, std::size_t>& table) {
        auto it = table.find(e);
        if (it == table.end()) return;
        const auto& stacks = states[it->second]->stacks;
        auto s = stacks.find(e);
        if (s != stacks.end()) order.insert(order.end(), s->second.begin(), s->second.end());
      };
      append_factor(whole_);
      append_factor(tail_);
      if (auto it = parked_edges_.find(e); it != parked_edges_.end()) {
        for (const auto& [slot, p] : it->second) order.push_back(p);
      }
      append_factor(head_);
      for (std::size_t s = 0; s < order.size(); ++s) {
        cell.particles[static_cast<std::size_t>(order[s])] = {true, e, static_cast<int>(s), -1};
      }
    }
    for (const auto& [p, end] : moves) {
      if (p >= 0) cell.particles[static_cast<std::size_t>(p)].move = end;
    }
    return cell;
  }

 private:
  const Graph& g_;
  int n_;
  const std::vector<BasicCycle>& factors_;
  const Parking& parking_;
  std::set<VertexId> owned_;
  std::map<EdgeId, std::size_t> whole_, tail_, head_;
  std::map<EdgeId, std::vector<std::pair<int, int>>> parked_edges_;
};

}  // namespace

Chain product_cycle(const CubeComplex& model, const std::vector<BasicCycle>& factors, const Parking& parking) {
  const Composer composer(model.graph(), model.particles(), factors, parking);
  const int q = static_cast<int>(factors.size());
  std::map<int, std::int64_t> acc;
  std::vector<std::size_t> idx(factors.size(), 0);
  std::vector<const BasicCycle::State*> states(factors.size());
  std::vector<std::pair<int, int>> moves(factors.size());
  while (true) {
    std::int64_t coeff = 1;
    std::vector<int> axis_labels;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      const auto& step = factors[i].steps()[idx[i]];
      states[i] = &step.state;
      moves[i] = {step.particle, step.end};
      coeff *= step.coefficient;
      axis_labels.push_back(step.particle);
    }
    coeff *= permutation_sign(axis_labels);
    const ModelCell cell = composer.compose(states, moves);
    const auto index = model.index_of(q, cell.key());
    if (!index) throw InvalidState("product cell is missing from the model");
    acc[static_cast<int>(*index)] += coeff;
    // Next tuple.
    std::size_t i = 0;
    for (; i < factors.size(); ++i) {
      if (++idx[i] < factors[i].steps().size()) break;
      idx[i] = 0;
    }
    if (i == factors.size()) break;
  }
  Chain z;
  for (const auto& [i, v] : acc) {
    if (v != 0) z.emplace_back(i, v);
  }
  if (!model.boundary_ref(q).apply(z).empty()) throw InvalidState("product of basic cycles is not a cycle");
  return z;
}

std::vector<Parking> enumerate_parkings(const Graph& g, int n, const std::vector<BasicCycle>& factors,
                                        std::size_t limit) {
  std::set<int> moving;
  std::set<VertexId> owned;
  std::set<EdgeId> whole;
  for (const auto& f : factors) {
    moving.insert(f.particles().begin(), f.particles().end());
    owned.insert(f.owned_vertices().begin(), f.owned_vertices().end());
    for (const auto& [e, use] : f.edge_uses()) {
      if (use == -1) whole.insert(e);
    }
  }
  std::vector<int> rest;
  for (int p = 0; p < n; ++p) {
    if (moving.count(p) == 0) rest.push_back(p);
  }
  std::vector<Parking> out;
  Parking cur;
  std::set<VertexId> taken;
  std::map<EdgeId, std::vector<int>> stacks;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == rest.size()) {
      if (out.size() >= limit) throw BudgetExceeded("too many parkings");
      Parking pk = cur;
      for (const auto& [e, stack] : stacks) {
        for (std::size_t s = 0; s < stack.size(); ++s) pk[stack[s]] = {true, e, static_cast<int>(s), -1};
      }
      out.push_back(std::move(pk));
      return;
    }
    const int p = rest[i];
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      if (owned.count(v) != 0 || taken.count(v) != 0) continue;
      taken.insert(v);
      cur[p] = {false, v, 0, -1};
      rec(i + 1);
      cur.erase(p);
      taken.erase(v);
    }
    for (EdgeId e = 0; e < g.num_edges(); ++e) {
      if (whole.count(e) != 0 || g.edge(e).is_loop()) continue;
      auto& stack = stacks[e];
      for (std::size_t pos = 0; pos <= stack.size(); ++pos) {
        stack.insert(stack.begin() + static_cast<std::ptrdiff_t>(pos), p);
        rec(i + 1);
        stack.erase(stack.begin() + static_cast<std::ptrdiff_t>(pos));
      }
      if (stack.empty()) stacks.erase(e);
    }
  };
  rec(0);
  return out;
}

Parking canonical_parking(const Graph& g, int n, const std::vector<BasicCycle>& factors) {
  std::set<int> moving;
  std::vector<int> dist(static_cast<std::size_t>(g.num_vertices()), -1);
  std::deque<VertexId> queue;
  std::set<VertexId> blocked;
  for (const auto& f : factors) {
    moving.insert(f.particles().begin(), f.particles().end());
    const Subgraph s = f.support(g);
    for (VertexId v = 0; v < g.num_vertices(); ++v) {
      if (s.contains_vertex(v) && dist[static_cast<std::size_t>(v)] < 0) {
        dist[static_cast<std::size_t>(v)] = 0;
        queue.push_back(v);
      }
    }
    blocked.insert(f.owned_vertices().begin(), f.owned_vertices().end());
  }
  while (!queue.empty()) {
    const VertexId v = queue.front();
    queue.pop_front();
    for (EdgeId e : g.incident_edges(v)) {
      const Edge& edge = g.edge(e);
      const VertexId u = edge.tail == v ? edge.head : edge.tail;
      if (dist[static_cast<std::size_t>(u)] < 0) {
        dist[static_cast<std::size_t>(u)] = dist[static_cast<std::size_t>(v)] + 1;
        queue.push_back(u);
      }
    }
  }
  std::vector<VertexId> spots;
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (blocked.count(v) == 0) spots.push_back(v);
  }
  // Farthest first; leaves before inner vertices at equal distance; then by id.
  std::stable_sort(spots.begin(), spots.end(), [&](VertexId a, VertexId b) {
    const auto key = [&](VertexId v) { return std::make_pair(-dist[static_cast<std::size_t>(v)], g.valence(v) == 1 ? 0 : 1); };
    return key(a) < key(b);
  });
  Parking out;
  std::size_t next = 0;
  for (int p = 0; p < n; ++p) {
    if (moving.count(p) != 0) continue;
    if (next == spots.size()) throw InvalidArgument("not enough free vertices to park every particle");
    out[p] = {false, spots[next++], 0, -1};
  }
  return out;
}

namespace {

std::string state_key(const BasicCycle::State& s) {
  std::string key;
  for (const auto& [p, v] : s.at_vertex) key += "v" + std::to_string(p) + ":" + std::to_string(v) + ";";
  for (const auto& [e, stack] : s.stacks) {
    key += "e" + std::to_string(e) + ":";
    for (int p : stack) key += std::to_string(p) + ",";
    key += ";";
  }
  return key;
}

bool regions_compatible(const std::vector<const Region*>& regions) {
  std::set<VertexId> owned;
  std::map<EdgeId, std::vector<int>> uses;
  for (const Region* r : regions) {
    for (VertexId v : r->owned) {
      if (!owned.insert(v).second) return false;
    }
    for (const auto& [e, use] : r->uses) uses[e].push_back(use);
  }
  for (const auto& [e, list] : uses) {
    if (list.size() == 1) continue;
    if (list.size() > 2 || list[0] == -1 || list[1] == -1 || list[0] == list[1]) return false;
  }
  return true;
}

}  // namespace

std::vector<BasicCycle> local_cycles(const Graph& g, const Region& region, const std::vector<int>& particles) {
  std::set<int> labels(particles.begin(), particles.end());
  if (labels.size() != particles.size() || (!labels.empty() && *labels.begin() < 0)) {
    throw InvalidArgument("particle labels must be distinct and non-negative");
  }
  for (const auto& [e, use] : region.uses) {
    if (!g.has_edge(e) || g.edge(e).is_loop()) throw InvalidArgument("region edges must be non-loop edges of the graph");
  }
  const std::vector<int> order(labels.begin(), labels.end());

  std::vector<BasicCycle::State> states;
  std::map<std::string, int> index;
  BasicCycle::State cur;
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == order.size()) {
      index.emplace(state_key(cur), static_cast<int>(states.size()));
      states.push_back(cur);
      return;
    }
    const int p = order[i];
    for (VertexId v : region.owned) {
      bool taken = false;
      for (const auto& [q, w] : cur.at_vertex) taken = taken || w == v;
      if (taken) continue;
      cur.at_vertex[p] = v;
      rec(i + 1);
      cur.at_vertex.erase(p);
    }
    for (const auto& [e, use] : region.uses) {
      auto& stack = cur.stacks[e];
      for (std::size_t pos = 0; pos <= stack.size(); ++pos) {
        stack.insert(stack.begin() + static_cast<std::ptrdiff_t>(pos), p);
        rec(i + 1);
        stack.erase(stack.begin() + static_cast<std::ptrdiff_t>(pos));
      }
      if (stack.empty()) cur.stacks.erase(e);
    }
  };
  rec(0);

  // 1-cells: an extremal particle sweeps to an owned, free vertex.
  std::vector<BasicCycle::Step> cells;
  std::vector<Triplet> triplets;
  for (const auto& s : states) {
    for (const auto& [e, stack] : s.stacks) {
      const int use = region.uses.at(e);
      for (int end = 0; end <= 1; ++end) {
        if (use != -1 && use != end) continue;
        const VertexId v = g.edge(e).endpoint(end);
        bool free = true;
        for (const auto& [q, w] : s.at_vertex) free = free && w != v;
        if (!free) continue;
        const int p = end == 0 ? stack.front() : stack.back();
        BasicCycle::State moved = s;
        auto& ms = moved.stacks[e];
        ms.erase(std::find(ms.begin(), ms.end(), p));
        if (ms.empty()) moved.stacks.erase(e);
        moved.at_vertex[p] = v;
        const int col = static_cast<int>(cells.size());
        triplets.push_back({index.at(state_key(moved)), col, 1});
        triplets.push_back({index.at(state_key(s)), col, -1});
        cells.push_back({s, p, e, end, 1});
      }
    }
  }
  const auto d = SparseIntMatrix::from_triplets(static_cast<int>(states.size()), static_cast<int>(cells.size()), triplets);
  std::vector<BasicCycle> out;
  for (const Chain& z : kernel_basis(d)) {
    BasicCycle c;
    c.region_ = region;
    c.particles_ = order;
    for (const auto& [col, coeff] : z) {
      BasicCycle::Step step = cells[static_cast<std::size_t>(col)];
      step.coefficient = coeff;
      c.steps_.push_back(std::move(step));
    }
    out.push_back(std::move(c));
  }
  return out;
}

namespace {

// Embedded stars at essential vertices and H's between essential vertices with no
// essential vertex in between, with every choice of two further edges at each end.
std::vector<Region> tree_regions(const Graph& tree) {
  std::vector<Region> out;
  const auto essential = essential_vertices(tree);
  for (VertexId v : essential) out.push_back(star_region(tree, v));
  const std::set<VertexId> ess(essential.begin(), essential.end());
  auto pairs = [&](VertexId x, EdgeId skip) {
    std::vector<std::array<EdgeId, 2>> list;
    std::vector<EdgeId> others;
    for (EdgeId e : tree.incident_edges(x)) {
      if (e != skip) others.push_back(e);
    }
    for (std::size_t a = 0; a < others.size(); ++a) {
      for (std::size_t b = a + 1; b < others.size(); ++b) list.push_back({others[a], others[b]});
    }
    return list;
  };
  for (std::size_t i = 0; i < essential.size(); ++i) {
    for (std::size_t j = i + 1; j < essential.size(); ++j) {
      const VertexId v = essential[i], w = essential[j];
      const TreePath path = tree_path(tree, v, w);
      bool clean = true;
      for (std::size_t k = 1; k + 1 < path.vertices.size(); ++k) clean = clean && ess.count(path.vertices[k]) == 0;
      if (!clean) continue;
      for (const auto& at_v : pairs(v, path.edges.front())) {
        for (const auto& at_w : pairs(w, path.edges.back())) out.push_back(h_region(tree, path.edges, v, at_v, at_w));
      }
    }
  }
  return out;
}

}  // namespace

TreeGeneratorReport verify_tree_generators(const Graph& tree, int n, int q, const LabOptions& options) {
  if (!tree.is_tree()) throw InvalidArgument("tree generators need a tree");
  if (n < 0 || q < 0) throw InvalidArgument("n and q must be non-negative");
  const CubeComplex model = build_model(tree, n, {}, BuildOptions{options.max_cells});
  TreeGeneratorReport report;
  report.n = n;
  report.q = q;
  std::vector<Chain> candidates;
  if (q == 0) {
    for (std::size_t i = 0; i < model.num_cells(0); ++i) candidates.push_back({{static_cast<int>(i), 1}});
  } else if (2 * q <= n) {
    const auto regions = tree_regions(tree);
    // q compatible regions in increasing index order.
    std::vector<std::vector<std::size_t>> combos;
    std::vector<std::size_t> pick;
    std::function<void(std::size_t)> choose = [&](std::size_t from) {
      if (pick.size() == static_cast<std::size_t>(q)) {
        combos.push_back(pick);
        return;
      }
      for (std::size_t i = from; i < regions.size(); ++i) {
        pick.push_back(i);
        std::vector<const Region*> probe;
        for (std::size_t k : pick) probe.push_back(&regions[k]);
        if (regions_compatible(probe)) choose(i + 1);
        pick.pop_back();
      }
    };
    choose(0);
    auto per_combo = parallel_map(combos.size(), options.jobs, [&](std::size_t c) {
      std::vector<Chain> out;
      // Disjoint particle sets of size >= 2, one per region.
      std::vector<int> owner(static_cast<std::size_t>(n), -1);
      std::function<void(int)> assign = [&](int p) {
        if (p == n) {
          std::vector<std::vector<int>> sets(static_cast<std::size_t>(q));
          for (int i = 0; i < n; ++i) {
            if (owner[static_cast<std::size_t>(i)] >= 0) sets[static_cast<std::size_t>(owner[static_cast<std::size_t>(i)])].push_back(i);
          }
          for (const auto& s : sets) {
            if (s.size() < 2) return;
          }
          std::vector<std::vector<BasicCycle>> local;
          for (int k = 0; k < q; ++k) {
            local.push_back(local_cycles(tree, regions[combos[c][static_cast<std::size_t>(k)]], sets[static_cast<std::size_t>(k)]));
            if (local.back().empty()) return;
          }
          std::vector<std::size_t> idx(static_cast<std::size_t>(q), 0);
          while (true) {
            std::vector<BasicCycle> factors;
            for (int k = 0; k < q; ++k) factors.push_back(local[static_cast<std::size_t>(k)][idx[static_cast<std::size_t>(k)]]);
            for (const Parking& pk : enumerate_parkings(tree, n, factors)) out.push_back(product_cycle(model, factors, pk));
            std::size_t k = 0;
            for (; k < idx.size(); ++k) {
              if (++idx[k] < local[k].size()) break;
              idx[k] = 0;
            }
            if (k == idx.size()) break;
          }
          return;
        }
        for (int k = -1; k < q; ++k) {
          owner[static_cast<std::size_t>(p)] = k;
          assign(p + 1);
        }
        owner[static_cast<std::size_t>(p)] = -1;
      };
      assign(0);
      return out;
    });
    for (auto& list : per_combo) {
      for (auto& z : list) candidates.push_back(std::move(z));
    }
  }
  report.candidates = candidates.size();
  report.verdict = generated_check(model, q, candidates);
  report.betti = report.verdict.betti;
  return report;
}

std::optional<int> paper_degree_bound(const FamilyDescriptor& family, int n) {
  switch (family.kind) {
    case FamilyKind::IntervalDelta:
      return n;
    case FamilyKind::CircleLambda:
      return 6 * n;
    case FamilyKind::WedgeFI: {
      bool trees = family.base.is_tree();
      bool points = true;
      for (const auto& s : family.summands) {
        trees = trees && s.graph.is_tree();
        points = points && s.glue.vertices.size() == 1 && s.glue.edges.empty();
      }
      if (trees) return 2 * n;
      if (points) return 3 * n;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

DegreeVerdict generation_verdict(const CubeComplex& model, const FamilyDescriptor& family, int q, int degree,
                                 const FamilySizes& sizes, int jobs) {
  FamilySizes d;
  for (int k : sizes) d.push_back(std::min(degree, k));
  const auto supports = support_embeddings(family, d, sizes);
  auto pushed = parallel_map(supports.size(), jobs, [&](std::size_t i) {
    const SupportedSubcomplex sub = subcomplex_supported_in(model, supports[i]);
    std::vector<Chain> out;
    if (q > sub.complex.top_dimension()) return out;
    for (const Chain& z : cycle_space_basis(sub.complex, q)) {
      out.push_back(push_forward(z, sub.inclusion[static_cast<std::size_t>(q)]));
    }
    return out;
  });
  std::vector<Chain> candidates;
  for (auto& list : pushed) {
    for (auto& z : list) candidates.push_back(std::move(z));
  }
  DegreeVerdict v;
  v.degree = degree;
  v.supports = supports.size();
  v.candidates = candidates.size();
  const GenerationVerdict g = generated_check(model, q, candidates);
  v.over_q = g.generates_over_q;
  v.over_z = g.generates_over_z;
  v.missing_rank = g.missing_rank;
  return v;
}

GenerationReport generation_degree_check(const FamilyDescriptor& family, int n, int q, int degree,
                                         const FamilySizes& sizes, const LabOptions& options) {
  family.validate();
  if (static_cast<int>(sizes.size()) != family.arity()) throw InvalidArgument("one size per family coordinate");
  if (n < 0 || q < 0 || degree < 0) throw InvalidArgument("n, q and the degree must be non-negative");
  for (int k : sizes) {
    if (degree > k) throw InvalidArgument("degree exceeds a target size");
  }
  const auto start = std::chrono::steady_clock::now();
  GenerationReport r;
  r.kind = family.kind;
  r.n = n;
  r.q = q;
  r.sizes = sizes;
  r.degree = degree;
  r.paper_bound = paper_degree_bound(family, n);
  const int max_size = *std::max_element(sizes.begin(), sizes.end());
  auto elapsed = [&] { return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count(); };

  CubeComplex model;
  try {
    model = build_model(realize_family(family, sizes), n, {}, BuildOptions{options.max_cells});
  } catch (const BudgetExceeded& e) {
    r.partial = true;
    r.partial_reason = e.what();
    r.seconds = elapsed();
    return r;
  }
  r.cells = model.total_cells();
  std::map<int, DegreeVerdict> seen;
  auto verdict_at = [&](int d) -> const DegreeVerdict& {
    auto it = seen.find(d);
    if (it == seen.end()) {
      it = seen.emplace(d, generation_verdict(model, family, q, d, sizes, options.jobs)).first;
      r.trail.push_back(it->second);
    }
    return it->second;
  };
  const DegreeVerdict& at_d = verdict_at(degree);
  r.over_q = at_d.over_q;
  r.over_z = at_d.over_z;
  r.missing_rank = at_d.missing_rank;
  r.betti = generated_check(model, q, {}).betti;
  if (r.over_z) {
    int d = degree;
    while (d > 0 && verdict_at(d - 1).over_z) --d;
    r.d_min = d;
  } else {
    for (int d = degree + 1; d <= max_size; ++d) {
      if (verdict_at(d).over_z) {
        r.d_min = d;
        break;
      }
    }
  }
  if (r.paper_bound) {
    const int clamped = std::min(*r.paper_bound, max_size);
    r.pass = verdict_at(clamped).over_z;
  }
  std::sort(r.trail.begin(), r.trail.end(), [](const DegreeVerdict& a, const DegreeVerdict& b) { return a.degree < b.degree; });
  r.seconds = elapsed();
  return r;
}

PolynomialFit fit_polynomial(const std::vector<int>& ks, const std::vector<std::size_t>& dims, int max_degree,
                             int holdout) {
  if (ks.size() != dims.size()) throw InvalidArgument("one dimension per window point");
  if (max_degree < 0 || holdout < 0) throw InvalidArgument("degree and holdout must be non-negative");
  const std::size_t m = static_cast<std::size_t>(max_degree) + 1;
  if (ks.size() < m + static_cast<std::size_t>(holdout)) throw InvalidArgument("window too short for the degree and holdout");
  // Solve the Vandermonde system on the first m points exactly.
  RationalMatrix a(m, std::vector<Rational>(m + 1));
  for (std::size_t i = 0; i < m; ++i) {
    Rational x = 1;
    for (std::size_t j = 0; j < m; ++j) {
      a[i][j] = x;
      x *= ks[i];
    }
    a[i][m] = static_cast<unsigned long>(dims[i]);
  }
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t p = col;
    while (p < m && a[p][col] == 0) ++p;
    if (p == m) throw InvalidArgument("window points must be distinct");
    std::swap(a[col], a[p]);
    for (std::size_t i = 0; i < m; ++i) {
      if (i == col || a[i][col] == 0) continue;
      const Rational f = a[i][col] / a[col][col];
      for (std::size_t j = col; j <= m; ++j) a[i][j] -= f * a[col][j];
    }
  }
  PolynomialFit fit;
  fit.ks = ks;
  fit.dims = dims;
  for (std::size_t i = 0; i < m; ++i) fit.coefficients.push_back(a[i][m] / a[i][i]);
  while (!fit.coefficients.empty() && fit.coefficients.back() == 0) fit.coefficients.pop_back();
  fit.degree = static_cast<int>(fit.coefficients.size()) - 1;
  fit.fits = true;
  for (std::size_t i = 0; i < ks.size(); ++i) {
    Rational y = 0, x = 1;
    for (const Rational& c : fit.coefficients) {
      y += c * x;
      x *= ks[i];
    }
    fit.predictions.push_back(y);
    if (i >= m && y != Rational(static_cast<unsigned long>(dims[i]))) fit.fits = false;
  }
  return fit;
}

std::vector<std::size_t> family_betti_numbers(const FamilyDescriptor& family, int n, int q, const std::vector<int>& ks,
                                              const LabOptions& options) {
  family.validate();
  return parallel_map(ks.size(), options.jobs, [&](std::size_t i) {
    const FamilySizes sizes(static_cast<std::size_t>(family.arity()), ks[i]);
    const CubeComplex c = build_model(realize_family(family, sizes), n, {}, BuildOptions{options.max_cells});
    const auto betti = betti_numbers(c);
    return static_cast<std::size_t>(q) < betti.size() ? betti[static_cast<std::size_t>(q)] : std::size_t{0};
  });
}

PolynomialFit dimension_polynomial_check(const FamilyDescriptor& family, int n, int q, int k0, int k1, int max_degree,
                                         int holdout, const LabOptions& options) {
  if (k1 < k0) throw InvalidArgument("empty window");
  if (k1 - k0 + 1 < max_degree + 1 + holdout) throw InvalidArgument("window too short for the degree and holdout");
  std::vector<int> ks;
  for (int k = k0; k <= k1; ++k) ks.push_back(k);
  return fit_polynomial(ks, family_betti_numbers(family, n, q, ks, options), max_degree, holdout);
}

}  // namespace confstab

#include "confstab/homology.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "confstab/detail/column_reduction.hpp"
#include "confstab/errors.hpp"
#include "confstab/smith.hpp"

namespace confstab {

namespace {

using detail::ColumnReducer;
using detail::Num;
using detail::Vec;

// Rank and divisors of one boundary matrix, skipping the cleared columns.
struct DegreeReduction {
  std::size_t rank = 0;
  std::vector<BigInt> torsion;
  std::vector<bool> unit_pivot_rows;  // rows that carry a unit pivot (cleared in the next step)
};

template <class T>
DegreeReduction reduce_degree(const SparseIntMatrix& d, const std::vector<bool>& cleared) {
  ColumnReducer<T> reducer(d.rows(), false);
  for (int j = 0; j < d.cols(); ++j) {
    if (!cleared.empty() && cleared[static_cast<std::size_t>(j)]) continue;
    reducer.insert(detail::from_chain<T>(d.column(j)), j);
  }
  DegreeReduction out;
  out.rank = reducer.rank();
  out.unit_pivot_rows.assign(static_cast<std::size_t>(d.rows()), false);
  for (const auto& p : reducer.pivots()) {
    if (Num<T>::is_unit(p.back().second)) out.unit_pivot_rows[static_cast<std::size_t>(p.back().first)] = true;
  }
  if (!reducer.all_pivots_unit()) {
    const auto residual = reducer.residual_columns();
    std::map<int, std::size_t> row_index;
    for (const auto& col : residual) {
      for (const auto& e : col) row_index.emplace(e.first, 0);
    }
    std::size_t next = 0;
    for (auto& [r, idx] : row_index) idx = next++;
    DenseBigMatrix dense(row_index.size(), std::vector<BigInt>(residual.size(), 0));
    for (std::size_t j = 0; j < residual.size(); ++j) {
      for (const auto& [r, v] : residual[j]) dense[row_index[r]][j] = Num<T>::to_big(v);
    }
    for (BigInt& x : dense_smith_divisors(std::move(dense))) {
      if (x > 1) out.torsion.push_back(std::move(x));
    }
  }
  return out;
}

DegreeReduction reduce_degree(const SparseIntMatrix& d, const std::vector<bool>& cleared) {
  try {
    return reduce_degree<std::int64_t>(d, cleared);
  } catch (const ArithmeticOverflow&) {
    return reduce_degree<BigInt>(d, cleared);
  }
}

template <class T>
std::vector<Chain> kernel_basis(const SparseIntMatrix& d) {
  std::vector<Chain> out;
  ColumnReducer<T> reducer(d.rows(), true);
  for (int j = 0; j < d.cols(); ++j) {
    auto outcome = reducer.insert(detail::from_chain<T>(d.column(j)), j);
    if (!outcome.is_pivot) out.push_back(detail::to_chain<T>(outcome.combination));
  }
  return out;
}

}  // namespace

std::vector<Chain> kernel_basis(const SparseIntMatrix& d) {
  try {
    return kernel_basis<std::int64_t>(d);
  } catch (const ArithmeticOverflow&) {
    return kernel_basis<BigInt>(d);
  }
}

namespace {

void check_chain(const Chain& z, std::size_t size) {
  int prev = -1;
  for (const auto& [i, v] : z) {
    if (i <= prev || static_cast<std::size_t>(i) >= size || v == 0) {
      throw InvalidArgument("chain is not a sorted, zero-free vector of cell indices");
    }
    prev = i;
  }
}

}  // namespace

HomologyPresentation homology(const CubeComplex& c, int q) {
  if (q < 0) throw InvalidArgument("homology degree must be non-negative");
  HomologyPresentation h;
  h.group_.degree = q;
  const std::size_t cells = c.num_cells(q);
  h.boundary_ = c.boundary(q);
  if (cells == 0) return h;

  // Z_q basis, then boundaries reduced first so that the basis pivots complement them.
  const std::vector<Chain> cycles = kernel_basis(h.boundary_);
  const SparseIntMatrix up = c.boundary(q + 1);

  using V = Vec<BigInt>;
  h.pivot_of_row_.assign(cells, -1);
  auto reduce_into = [&](V col, int basis_flag) {
    while (!col.empty()) {
      const int r = col.back().first;
      const int k = h.pivot_of_row_[static_cast<std::size_t>(r)];
      if (k < 0) {
        h.pivot_of_row_[static_cast<std::size_t>(r)] = static_cast<int>(h.pivots_.size());
        h.pivots_.push_back(std::move(col));
        h.basis_index_.push_back(basis_flag);
        return;
      }
      const V& pk = h.pivots_[static_cast<std::size_t>(k)];
      const BigInt ak = pk.back().second;
      const BigInt aj = col.back().second;
      if (Num<BigInt>::divides(ak, aj)) {
        col = detail::combine(BigInt(1), col, BigInt(-(aj / ak)), pk);
      } else if ((h.basis_index_[static_cast<std::size_t>(k)] < 0) == (basis_flag < 0)) {
        // Same kind of column: a unimodular step keeps both lattices.
        BigInt s, t;
        const BigInt g = Num<BigInt>::gcdext(ak, aj, s, t);
        V new_pk = detail::combine(s, pk, t, col);
        col = detail::combine(BigInt(ak / g), col, BigInt(-(aj / g)), pk);
        h.pivots_[static_cast<std::size_t>(k)] = std::move(new_pk);
      } else {
        // Scaling a cycle: fine over Q, but the basis may stop being integral.
        const BigInt g = gcd(ak, aj);
        col = detail::combine(BigInt(ak / g), col, BigInt(-(aj / g)), pk);
        h.integral_ = false;
      }
    }
  };
  for (int j = 0; j < up.cols(); ++j) reduce_into(detail::from_chain<BigInt>(up.column(j)), -1);
  const std::size_t boundary_count = h.pivots_.size();
  int next_basis = 0;
  for (const Chain& z : cycles) {
    const std::size_t before = h.pivots_.size();
    reduce_into(detail::from_chain<BigInt>(z), next_basis);
    if (h.pivots_.size() > before) ++next_basis;
  }
  for (std::size_t k = boundary_count; k < h.pivots_.size(); ++k) {
    h.basis_.push_back(detail::to_chain<BigInt>(h.pivots_[k]));
  }
  h.group_.betti = h.basis_.size();

  const DegreeReduction red = reduce_degree(up, {});
  h.group_.torsion = red.torsion;
  return h;
}

std::vector<Rational> HomologyPresentation::project(const Chain& z) const {
  check_chain(z, pivot_of_row_.size());
  if (!boundary_.apply(z).empty()) throw InvalidArgument("projection of a chain that is not a cycle");
  std::vector<Rational> coords(basis_.size(), Rational(0));
  std::map<int, Rational> work;
  for (const auto& [i, v] : z) work.emplace(i, Rational(static_cast<long>(v)));
  while (!work.empty()) {
    auto top = std::prev(work.end());
    const int r = top->first;
    const int k = pivot_of_row_[static_cast<std::size_t>(r)];
    if (k < 0) throw InvalidState("cycle escapes the reduced cycle space");
    const auto& pk = pivots_[static_cast<std::size_t>(k)];
    Rational f = top->second / Rational(pk.back().second);
    f.canonicalize();
    for (const auto& [i, v] : pk) {
      Rational& slot = work[i];
      slot -= f * Rational(v);
      if (slot == 0) work.erase(i);
    }
    if (basis_index_[static_cast<std::size_t>(k)] >= 0) coords[static_cast<std::size_t>(basis_index_[static_cast<std::size_t>(k)])] += f;
  }
  return coords;
}

std::vector<HomologyGroup> homology_groups(const CubeComplex& c) {
  const int top = c.top_dimension();
  std::vector<HomologyGroup> out(static_cast<std::size_t>(std::max(top + 1, 0)));
  // rank_of[q] = rank of d_q; reductions run from the top so lower degrees can clear.
  std::vector<std::size_t> rank_of(static_cast<std::size_t>(top + 2), 0);
  std::vector<bool> cleared;
  for (int q = top; q >= 1; --q) {
    const DegreeReduction red = reduce_degree(c.boundary_ref(q), cleared);
    rank_of[static_cast<std::size_t>(q)] = red.rank;
    out[static_cast<std::size_t>(q - 1)].torsion = red.torsion;
    cleared = red.unit_pivot_rows;
  }
  for (int q = 0; q <= top; ++q) {
    auto& g = out[static_cast<std::size_t>(q)];
    g.degree = q;
    g.betti = c.num_cells(q) - rank_of[static_cast<std::size_t>(q)] - rank_of[static_cast<std::size_t>(q + 1)];
  }
  return out;
}

std::vector<std::size_t> betti_numbers(const CubeComplex& c) {
  std::vector<std::size_t> out;
  for (const auto& g : homology_groups(c)) out.push_back(g.betti);
  return out;
}

std::size_t boundary_rank(const CubeComplex& c, int q) {
  if (q <= 0 || q > c.top_dimension()) return 0;
  return reduce_degree(c.boundary_ref(q), {}).rank;
}

std::vector<Chain> cycle_space_basis(const CubeComplex& c, int q) {
  if (q < 0) throw InvalidArgument("cycle degree must be non-negative");
  return kernel_basis(c.boundary(q));
}

namespace {

template <class T>
GenerationVerdict generation_impl(const CubeComplex& c, int q, const std::vector<Chain>& candidates) {
  const SparseIntMatrix& up = c.boundary_ref(q + 1);
  const SparseIntMatrix& down = c.boundary_ref(q);
  ColumnReducer<T> lattice(static_cast<int>(c.num_cells(q)), false);
  for (int j = 0; j < up.cols(); ++j) lattice.insert(detail::from_chain<T>(up.column(j)), j);
  const std::size_t rank_up = lattice.rank();
  std::vector<bool> cleared(c.num_cells(q), false);
  for (const auto& p : lattice.pivots()) {
    if (Num<T>::is_unit(p.back().second)) cleared[static_cast<std::size_t>(p.back().first)] = true;
  }
  const std::size_t rank_down = reduce_degree(down, cleared).rank;
  const std::size_t cycles = c.num_cells(q) - rank_down;

  GenerationVerdict v;
  v.betti = cycles - rank_up;
  int id = up.cols();
  for (const Chain& z : candidates) lattice.insert(detail::from_chain<T>(z), id++);
  const std::size_t spanned = lattice.rank() - rank_up;
  v.missing_rank = v.betti - spanned;
  v.generates_over_q = v.missing_rank == 0;
  if (v.generates_over_q) {
    if (lattice.all_pivots_unit()) {
      v.generates_over_z = true;
    } else {
      const auto residual = lattice.residual_columns();
      std::map<int, std::size_t> row_index;
      for (const auto& col : residual) {
        for (const auto& e : col) row_index.emplace(e.first, 0);
      }
      std::size_t next = 0;
      for (auto& [r, idx] : row_index) idx = next++;
      DenseBigMatrix dense(row_index.size(), std::vector<BigInt>(residual.size(), 0));
      for (std::size_t j = 0; j < residual.size(); ++j) {
        for (const auto& [r, x] : residual[j]) dense[row_index[r]][j] = Num<T>::to_big(x);
      }
      const auto divisors = dense_smith_divisors(std::move(dense));
      v.generates_over_z = std::all_of(divisors.begin(), divisors.end(), [](const BigInt& d) { return d == 1; });
    }
  }
  return v;
}

}  // namespace

GenerationVerdict generated_check(const CubeComplex& c, int q, const std::vector<Chain>& candidates) {
  if (q < 0) throw InvalidArgument("generation degree must be non-negative");
  if (q > c.top_dimension()) {
    if (!candidates.empty()) throw InvalidArgument("candidate chains above the top dimension");
    GenerationVerdict empty;
    empty.generates_over_q = empty.generates_over_z = true;
    return empty;
  }
  const SparseIntMatrix& down = c.boundary_ref(q);
  for (const Chain& z : candidates) {
    check_chain(z, c.num_cells(q));
    if (!down.apply(z).empty()) throw InvalidArgument("candidate chain is not a cycle");
  }
  try {
    return generation_impl<std::int64_t>(c, q, candidates);
  } catch (const ArithmeticOverflow&) {
    return generation_impl<BigInt>(c, q, candidates);
  }
}

Chain push_forward(const Chain& z, const std::vector<std::size_t>& inclusion) {
  std::vector<std::pair<int, std::int64_t>> out;
  out.reserve(z.size());
  for (const auto& [i, v] : z) {
    if (i < 0 || static_cast<std::size_t>(i) >= inclusion.size()) throw InvalidArgument("chain index outside the subcomplex");
    out.emplace_back(static_cast<int>(inclusion[static_cast<std::size_t>(i)]), v);
  }
  return chain_normalize(std::move(out));
}

InducedMap induced_inclusion_map(const SupportedSubcomplex& sub, const CubeComplex& c, int q) {
  return induced_inclusion_map(sub, c, homology(sub.complex, q), homology(c, q));
}

InducedMap induced_inclusion_map(const SupportedSubcomplex& sub, const CubeComplex& c,
                                 const HomologyPresentation& h_sub, const HomologyPresentation& h_c) {
  const int q = h_sub.degree();
  if (h_c.degree() != q) throw InvalidArgument("presentations of different degrees");
  if (!(sub.complex.graph() == c.graph()) || sub.complex.particles() != c.particles()) {
    throw InvalidArgument("subcomplex does not live in this complex");
  }
  static const std::vector<std::size_t> empty;
  const auto& inc = static_cast<std::size_t>(q) < sub.inclusion.size() ? sub.inclusion[static_cast<std::size_t>(q)] : empty;
  for (std::size_t i = 0; i < inc.size(); ++i) {
    if (inc[i] >= c.num_cells(q) || c.cell_key(q, inc[i]) != sub.complex.cell_key(q, i)) {
      throw InvalidArgument("inclusion does not match the ambient complex");
    }
  }
  InducedMap out;
  out.matrix.assign(h_c.betti(), std::vector<Rational>(h_sub.betti(), Rational(0)));
  for (std::size_t j = 0; j < h_sub.cycle_basis().size(); ++j) {
    Chain pushed = push_forward(h_sub.cycle_basis()[j], inc);
    const auto coords = h_c.project(pushed);
    for (std::size_t i = 0; i < coords.size(); ++i) out.matrix[i][j] = coords[i];
    out.pushed_cycles.push_back(std::move(pushed));
  }
  return out;
}

Chain ChainAutomorphism::apply(int q, const Chain& z) const {
  const auto& img = images_.at(static_cast<std::size_t>(q));
  std::vector<std::pair<int, std::int64_t>> out;
  out.reserve(z.size());
  for (const auto& [i, v] : z) {
    const auto& [t, s] = img.at(static_cast<std::size_t>(i));
    out.emplace_back(static_cast<int>(t), s * v);
  }
  return chain_normalize(std::move(out));
}

ChainAutomorphism permutation_action_map(const CubeComplex& c, const GraphAutomorphism& a) {
  const Graph& g = c.graph();
  if (!is_automorphism(g, a)) throw InvalidArgument("map is not a graph automorphism");
  for (VertexId v = 0; v < g.num_vertices(); ++v) {
    if (c.sinks()[static_cast<std::size_t>(v)] != c.sinks()[static_cast<std::size_t>(a.vertex_map[static_cast<std::size_t>(v)])]) {
      throw InvalidArgument("automorphism does not preserve the sinks");
    }
  }
  std::vector<std::vector<std::pair<std::size_t, int>>> images;
  for (int q = 0; q <= c.top_dimension(); ++q) {
    auto& img = images.emplace_back();
    img.reserve(c.num_cells(q));
    for (std::size_t i = 0; i < c.num_cells(q); ++i) {
      const SignedFace f = map_cell(c.kind(), g, a, c.cell(q, i));
      const auto idx = c.index_of(f.face);
      if (!idx) throw InvalidState("image cell missing from the complex");
      img.emplace_back(*idx, f.sign);
    }
  }
  return ChainAutomorphism(std::move(images));
}

RationalMatrix induced_homology_matrix(const HomologyPresentation& h, const ChainAutomorphism& phi) {
  const std::size_t b = h.betti();
  RationalMatrix m(b, std::vector<Rational>(b, Rational(0)));
  for (std::size_t j = 0; j < b; ++j) {
    const auto coords = h.project(phi.apply(h.degree(), h.cycle_basis()[j]));
    for (std::size_t i = 0; i < b; ++i) m[i][j] = coords[i];
  }
  return m;
}

std::size_t rational_matrix_rank(RationalMatrix m) {
  std::size_t rank = 0;
  const std::size_t rows = m.size();
  const std::size_t cols = rows == 0 ? 0 : m[0].size();
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t p = rank;
    while (p < rows && m[p][col] == 0) ++p;
    if (p == rows) continue;
    std::swap(m[rank], m[p]);
    for (std::size_t i = rank + 1; i < rows; ++i) {
      if (m[i][col] == 0) continue;
      const Rational f = m[i][col] / m[rank][col];
      for (std::size_t j = col; j < cols; ++j) m[i][j] -= f * m[rank][j];
    }
    ++rank;
  }
  return rank;
}

Rational trace(const RationalMatrix& m) {
  Rational t = 0;
  for (std::size_t i = 0; i < m.size(); ++i) t += m[i].at(i);
  return t;
}

RationalMatrix rational_multiply(const RationalMatrix& a, const RationalMatrix& b) {
  const std::size_t k = b.size();
  const std::size_t cols = k == 0 ? 0 : b[0].size();
  RationalMatrix out(a.size(), std::vector<Rational>(cols, Rational(0)));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != k) throw InvalidArgument("rational_multiply: dimension mismatch");
    for (std::size_t l = 0; l < k; ++l) {
      if (a[i][l] == 0) continue;
      for (std::size_t j = 0; j < cols; ++j) out[i][j] += a[i][l] * b[l][j];
    }
  }
  return out;
}

RationalMatrix rational_identity(std::size_t n) {
  RationalMatrix m(n, std::vector<Rational>(n, Rational(0)));
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

}  // namespace confstab

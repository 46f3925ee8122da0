// One line per acceptance criterion; exit status is nonzero if any criterion fails.

#include <chrono>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "confstab/complex.hpp"
#include "confstab/errors.hpp"
#include "confstab/family.hpp"
#include "confstab/homology.hpp"
#include "confstab/rep_theory.hpp"
#include "confstab/stability_lab.hpp"

using namespace confstab;

namespace {

struct Outcome {
  bool pass = true;
  std::string detail;
};

struct Named {
  std::string name;
  Graph graph;
};

Graph spider() {
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

std::vector<Named> base_corpus() {
  return {{"interval", make_path_graph(1)},
          {"path3", make_path_graph(3)},
          {"star3", make_star(3)},
          {"star4", make_star(4)},
          {"star5", make_star(5)},
          {"h", make_h_graph()},
          {"cycle3", make_cycle_graph(3)},
          {"cycle4", make_cycle_graph(4)},
          {"star3+interval", wedge(make_star(3), make_path_graph(1))}};
}

std::vector<Named> full_corpus() {
  auto out = base_corpus();
  const FamilyDescriptor interval = make_interval_family(make_cycle_graph(3));
  const FamilyDescriptor circle = make_circle_family(make_cycle_graph(3));
  for (int k = 0; k <= 4; ++k) out.push_back({"interval_family" + std::to_string(k), realize_family(interval, {k})});
  for (int k = 1; k <= 4; ++k) out.push_back({"circle_family" + std::to_string(k), realize_family(circle, {k})});
  return out;
}

const BuildOptions kBudget{2'000'000};

std::vector<std::size_t> padded_betti(const CubeComplex& c, std::size_t len) {
  auto b = betti_numbers(c);
  b.resize(std::max(len, b.size()), 0);
  return b;
}

std::string list(const std::vector<std::size_t>& v) {
  std::string s = "(";
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
  return s + ")";
}

FamilyDescriptor star_family() { return make_wedge_family(make_point(), make_path_graph(1)); }

FamilyDescriptor tripod_family() {
  FamilyDescriptor f;
  f.kind = FamilyKind::WedgeFI;
  f.base = make_path_graph(3);
  Summand s;
  s.graph = make_star(3);
  s.glue.vertices = {{1, 0}, {2, 1}};
  s.glue.edges = {{1, 0}};
  f.summands.push_back(s);
  return f;
}

Outcome chain_soundness() {
  std::size_t checked = 0, skipped = 0;
  for (const auto& [name, g] : full_corpus()) {
    for (int n = 1; n <= 3; ++n) {
      std::vector<CubeComplex> complexes;
      try {
        complexes.push_back(build_model(g, n, {}, kBudget));
        complexes.push_back(build_abrams_oracle(g, n, kBudget));
      } catch (const BudgetExceeded&) {
        ++skipped;
      }
      for (const auto& c : complexes) {
        for (int q = 2; q <= c.top_dimension(); ++q) {
          if (!c.boundary_ref(q - 1).multiply(c.boundary_ref(q)).is_zero()) {
            return {false, name + " n=" + std::to_string(n) + ": d_" + std::to_string(q - 1) + " d_" + std::to_string(q) + " != 0"};
          }
        }
        ++checked;
      }
    }
  }
  return {true, std::to_string(checked) + " complexes, " + std::to_string(skipped) + " over budget"};
}

Outcome figure_two() {
  const CubeComplex c = build_model(make_path_graph(1), 2, {0, 1});
  const auto groups = homology_groups(c);
  std::ostringstream s;
  s << "f=" << list(c.f_vector()) << " chi=" << c.euler_characteristic() << " b0=" << groups[0].betti
    << " b1=" << groups[1].betti;
  bool torsion = false;
  for (const auto& g : groups) torsion = torsion || !g.torsion.empty();
  const bool ok = c.f_vector() == std::vector<std::size_t>{10, 12, 2} && c.euler_characteristic() == 0 &&
                  groups[0].betti == 1 && groups[1].betti == 1 && !torsion;
  return {ok, s.str()};
}

Outcome oracle_equivalence() {
  std::size_t pairs = 0;
  for (const auto& [name, g] : full_corpus()) {
    for (int n = 1; n <= 3; ++n) {
      std::vector<std::size_t> a, b;
      try {
        a = padded_betti(build_model(g, n, {}, kBudget), 3);
        b = padded_betti(build_abrams_oracle(g, n, kBudget), 3);
      } catch (const BudgetExceeded&) {
        continue;
      }
      a.resize(3);
      b.resize(3);
      if (a != b) return {false, name + " n=" + std::to_string(n) + ": " + list(a) + " vs " + list(b)};
      ++pairs;
    }
  }
  return {true, std::to_string(pairs) + " graph/n pairs agree for q<=2"};
}

Outcome interval_circle() {
  std::size_t fact = 1;
  for (int n = 1; n <= 4; ++n) {
    fact *= static_cast<std::size_t>(n);
    const auto paper = padded_betti(build_model(make_path_graph(1), n), static_cast<std::size_t>(n) + 1);
    const auto oracle = padded_betti(build_abrams_oracle(make_path_graph(1), n), static_cast<std::size_t>(n) + 1);
    std::vector<std::size_t> expect(paper.size(), 0);
    expect[0] = fact;
    if (paper != oracle || paper != expect) return {false, "interval n=" + std::to_string(n) + ": " + list(paper)};
  }
  std::size_t f = 1;
  for (int n = 1; n <= 3; ++n) {
    if (n > 1) f *= static_cast<std::size_t>(n - 1);
    for (int m : {3, 4}) {
      const auto paper = padded_betti(build_model(make_cycle_graph(m), n), 2);
      const auto oracle = padded_betti(build_abrams_oracle(make_cycle_graph(m), n), 2);
      if (paper != oracle || paper[0] != f || paper[1] != f) {
        return {false, "cycle" + std::to_string(m) + " n=" + std::to_string(n) + ": " + list(paper)};
      }
    }
  }
  return {true, "interval b0=n! (n<=4), cycle b0=b1=(n-1)! (n<=3), both models"};
}

Outcome subdivision_invariance() {
  std::size_t pairs = 0;
  for (const auto& [name, g] : full_corpus()) {
    for (int n = 1; n <= 2; ++n) {
      std::vector<std::size_t> a, b;
      try {
        a = padded_betti(build_model(g, n, {}, kBudget), 3);
        b = padded_betti(build_model(subdivide(g, 2), n, {}, kBudget), 3);
      } catch (const BudgetExceeded&) {
        continue;
      }
      if (a != b) return {false, name + " n=" + std::to_string(n) + ": " + list(a) + " vs " + list(b)};
      ++pairs;
    }
  }
  return {true, std::to_string(pairs) + " graph/n pairs unchanged"};
}

Outcome tree_generators() {
  const std::vector<Named> trees = {{"star3", make_star(3)},
                                    {"star4", make_star(4)},
                                    {"star5", make_star(5)},
                                    {"h", make_h_graph()},
                                    {"spider", spider()}};
  std::size_t cases = 0;
  for (const auto& [name, g] : trees) {
    for (int n = 1; n <= 3; ++n) {
      for (int q = 0; q <= 2; ++q) {
        const auto r = verify_tree_generators(g, n, q);
        if (!r.verdict.generates_over_z) {
          return {false, name + " n=" + std::to_string(n) + " q=" + std::to_string(q) + " missing " +
                             std::to_string(r.verdict.missing_rank)};
        }
        ++cases;
      }
    }
  }
  return {true, std::to_string(cases) + " tree/n/q cases generated over Z"};
}

Outcome star_degrees() {
  std::ostringstream s;
  bool ok = true;
  for (int k : {5, 6}) {
    const auto r4 = generation_degree_check(star_family(), 2, 1, 4, {k});
    const auto r5 = generation_degree_check(star_family(), 2, 1, 5, {k});
    ok = ok && r4.over_z && r5.over_z;
    s << "K=" << k << " d4=" << r4.over_z << " d5=" << r5.over_z << " d_min=" << (r4.d_min ? *r4.d_min : -1) << "; ";
  }
  return {ok, s.str()};
}

Outcome theorem_a1() {
  const auto r = generation_degree_check(make_wedge_family(make_cycle_graph(3), make_path_graph(1)), 2, 1, 6, {6});
  const bool ok = r.over_z && r.d_min && *r.d_min <= 6 && r.pass == true;
  return {ok, "d=6 over_z=" + std::to_string(r.over_z) + " d_min=" + (r.d_min ? std::to_string(*r.d_min) : "none") +
                  " betti=" + std::to_string(r.betti)};
}

Outcome theorem_a2() {
  const auto r = generation_degree_check(tripod_family(), 2, 1, 4, {5});
  const bool ok = r.over_z && r.paper_bound == 4 && r.pass == true;
  return {ok, "d=4 over_z=" + std::to_string(r.over_z) + " d_min=" + (r.d_min ? std::to_string(*r.d_min) : "none") +
                  " betti=" + std::to_string(r.betti)};
}

Outcome theorem_4() {
  const auto r = generation_degree_check(make_interval_family(make_cycle_graph(3)), 2, 1, 2, {4});
  return {r.over_z && r.pass == true, "d=2 over_z=" + std::to_string(r.over_z) +
                                          " d_min=" + (r.d_min ? std::to_string(*r.d_min) : "none") +
                                          " betti=" + std::to_string(r.betti)};
}

Outcome theorem_5() {
  const auto r = generation_degree_check(make_circle_family(make_cycle_graph(3)), 2, 1, 5, {5});
  const bool ok = r.d_min && *r.d_min <= 5;
  return {ok, "d_min=" + (r.d_min ? std::to_string(*r.d_min) : std::string("none")) + " (bound min(6n,K)=5) betti=" +
                  std::to_string(r.betti)};
}

Outcome injectivity() {
  const Graph big = wedge(make_star(3), make_path_graph(1));
  const CubeComplex c = build_model(big, 2);
  Subgraph s = Subgraph::empty(big);
  for (VertexId v = 0; v < 4; ++v) s.vertices[static_cast<std::size_t>(v)] = true;
  for (EdgeId e = 0; e < 3; ++e) s.edges[static_cast<std::size_t>(e)] = true;
  const SupportedSubcomplex sub = subcomplex_supported_in(c, s);
  const InducedMap m = induced_inclusion_map(sub, c, 1);
  const std::size_t rank = rational_matrix_rank(m.matrix);
  const std::size_t b1 = betti_numbers(build_model(make_star(3), 2))[1];
  return {rank == b1 && b1 == 1, "rank=" + std::to_string(rank) + " b1(Conf2(Star3))=" + std::to_string(b1)};
}

Outcome representation_stability() {
  std::vector<CharacterReport> reports;
  for (int k = 5; k <= 7; ++k) reports.push_back(character_report(star_family(), {k}, 2, 1));
  std::ostringstream s;
  for (const auto& r : reports) {
    BigInt total = 0;
    for (const auto& [labels, c] : r.multiplicities) {
      if (c < 0) return {false, "negative multiplicity"};
      total += c * padded_dimension(labels, r.sizes);
    }
    if (total != static_cast<unsigned long>(r.betti)) return {false, "dimension sum differs from betti"};
  }
  const StabilityVerdict v = stability_verdict(reports);
  for (const auto& [labels, row] : v.table) {
    s << labels[0].to_string() << ":";
    for (const auto& x : row) s << ' ' << x;
    s << "; ";
  }
  return {v.stable, "stable=" + std::to_string(v.stable) + " " + s.str()};
}

Outcome polynomial_growth() {
  const PolynomialFit f = dimension_polynomial_check(star_family(), 2, 1, 3, 7, 3, 1);
  std::ostringstream s;
  s << "b1=" << list(f.dims) << " degree=" << f.degree << " coefficients";
  for (const auto& c : f.coefficients) s << ' ' << c;
  return {f.fits && f.degree <= 3, s.str()};
}

Outcome character_machinery() {
  for (int k = 1; k <= 7; ++k) {
    const auto ps = partitions(k);
    const auto table = character_table(k);
    const BigInt order = factorial(k);
    for (std::size_t a = 0; a < ps.size(); ++a) {
      for (std::size_t b = 0; b < ps.size(); ++b) {
        BigInt rows = 0, cols = 0;
        for (std::size_t j = 0; j < ps.size(); ++j) {
          rows += class_size(ps[j]) * table[a][j] * table[b][j];
          cols += BigInt(static_cast<long>(table[j][a] * table[j][b]));
        }
        const BigInt want = a == b ? order : BigInt(0);
        if (rows != want) return {false, "row orthogonality fails at k=" + std::to_string(k)};
        if (cols * class_size(ps[a]) != want) return {false, "column orthogonality fails at k=" + std::to_string(k)};
      }
    }
    std::vector<Rational> regular(ps.size(), 0);
    regular.back() = Rational(order);
    const auto c = decompose(regular, k);
    if (c.size() != ps.size()) return {false, "regular representation misses an irreducible at k=" + std::to_string(k)};
    for (const auto& [lambda, m] : c) {
      if (m != hook_length_dimension(lambda)) return {false, "c_lambda != dim at " + lambda.to_string()};
    }
  }
  return {true, "k<=7 both orthogonality relations; regular c_lambda = hook-length dim"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"chain-complex soundness", chain_soundness},
      {"figure-2 reproduction", figure_two},
      {"oracle equivalence", oracle_equivalence},
      {"interval/circle sanity", interval_circle},
      {"subdivision invariance", subdivision_invariance},
      {"tree generating theorem", tree_generators},
      {"star generation degrees", star_degrees},
      {"theorem A1 desk check", theorem_a1},
      {"theorem A2 desk check", theorem_a2},
      {"theorem 4 desk check", theorem_4},
      {"theorem 5 desk check", theorem_5},
      {"injectivity corollary", injectivity},
      {"representation stability", representation_stability},
      {"polynomial growth", polynomial_growth},
      {"character machinery", character_machinery},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failed;
    std::cout << (o.pass ? "[PASS] " : "[FAIL] ") << (i + 1 < 10 ? " " : "") << i + 1 << ". " << criteria[i].first
              << ": " << o.detail << " (" << secs << " s)" << std::endl;
  }
  std::cout << criteria.size() - static_cast<std::size_t>(failed) << "/" << criteria.size() << " criteria passed"
            << std::endl;
  return failed == 0 ? 0 : 1;
}

#pragma once

#include <array>
#include <cstdint>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "confstab/complex.hpp"
#include "confstab/family.hpp"
#include "confstab/graph.hpp"
#include "confstab/homology.hpp"

namespace confstab {

enum class BasicCycleKind { Star, H };

/// Static positions of the particles that do not move. For several particles parked
/// on one edge, `slot` orders them from the tail; only the relative order matters.
using Parking = std::map<int, ParticlePlacement>;

/// Where a basic cycle lives: the vertices it owns and how it uses edges
/// (-1 the whole edge, 0 / 1 only the germ at the tail / head).
struct Region {
  BasicCycleKind kind = BasicCycleKind::Star;
  std::vector<VertexId> owned;
  std::map<EdgeId, int> uses;
};

/// Embedded star: v and the germs of all its edges.
Region star_region(const Graph& g, VertexId v);
/// Embedded H: the path from v to w (whole edges and inner vertices) plus the germs
/// of two further edges at each end.
Region h_region(const Graph& g, const std::vector<EdgeId>& path, VertexId v, std::array<EdgeId, 2> at_v,
                std::array<EdgeId, 2> at_w);

/// An integral 1-cycle of some particles moving inside a region, as signed 1-cells
/// written relative to the region. Particle labels are 0-based.
class BasicCycle {
 public:
  // Positions of the moving particles: stacks[e] lists the particles on e from tail to
  // head; at_vertex[p] is set when p sits on a vertex.
  struct State {
    std::map<EdgeId, std::vector<int>> stacks;
    std::map<int, VertexId> at_vertex;
    friend bool operator==(const State&, const State&) = default;
  };
  // One 1-cell: in `state`, `particle` sits extremally on `edge` and sweeps to `end`.
  struct Step {
    State state;
    int particle = 0;
    EdgeId edge = 0;
    int end = 0;
    std::int64_t coefficient = 1;
  };

  [[nodiscard]] BasicCycleKind kind() const { return region_.kind; }
  [[nodiscard]] const Region& region() const { return region_; }
  [[nodiscard]] const std::vector<int>& particles() const { return particles_; }
  [[nodiscard]] const std::vector<Step>& steps() const { return steps_; }
  [[nodiscard]] const std::vector<VertexId>& owned_vertices() const { return region_.owned; }
  [[nodiscard]] const std::map<EdgeId, int>& edge_uses() const { return region_.uses; }
  /// Touched edges with both endpoints: the embedded star or H.
  [[nodiscard]] Subgraph support(const Graph& g) const;

 private:
  friend BasicCycle star_cycle(const Graph&, VertexId, std::array<EdgeId, 3>, int, int);
  friend BasicCycle h_cycle(const Graph&, const std::vector<EdgeId>&, VertexId, std::array<EdgeId, 2>,
                            std::array<EdgeId, 2>, int, int);
  friend std::vector<BasicCycle> local_cycles(const Graph&, const Region&, const std::vector<int>&);
  friend class WalkBuilder;

  Region region_;
  std::vector<int> particles_;
  std::vector<Step> steps_;
};

/// A Z-basis of the 1-cycles of the given particles moving inside the region. These
/// span the image of H_1 of the embedded star or H.
std::vector<BasicCycle> local_cycles(const Graph& g, const Region& region, const std::vector<int>& particles);

/// p and q rotate around v: p goes e1 -> e3 -> e2 -> e1 while q goes e2 -> e1 -> e3 -> e2.
BasicCycle star_cycle(const Graph& g, VertexId v, std::array<EdgeId, 3> edges, int p, int q);

/// The H class: p and q swap their order along the path at v and swap back at w.
/// `path` runs from v to w; at_v / at_w are two further edges at v / w.
BasicCycle h_cycle(const Graph& g, const std::vector<EdgeId>& path, VertexId v, std::array<EdgeId, 2> at_v,
                   std::array<EdgeId, 2> at_w, int p, int q);
/// Tree convenience: the path is the unique one from v to w.
BasicCycle h_cycle(const Graph& tree, VertexId v, VertexId w, std::array<EdgeId, 2> at_v,
                   std::array<EdgeId, 2> at_w, int p, int q);

/// Whether the cycles can be multiplied: disjoint particles, owned vertices and edge
/// uses (two germs at opposite ends of one edge are compatible).
bool compatible(const std::vector<BasicCycle>& factors);

/// The product of the cycles with every other particle parked, as a chain of degree
/// factors.size() in `model`. No factors gives the parked 0-cell.
/// Throws InvalidArgument for overlapping factors or a parking that meets them.
Chain product_cycle(const CubeComplex& model, const std::vector<BasicCycle>& factors, const Parking& parking);

/// Every parking of the particles not moved by the factors (bounded by `limit`).
std::vector<Parking> enumerate_parkings(const Graph& g, int n, const std::vector<BasicCycle>& factors,
                                        std::size_t limit = 100'000);

/// Parks the remaining particles on free vertices farthest from the factors' supports,
/// in increasing label order. Throws InvalidArgument if there are not enough vertices.
Parking canonical_parking(const Graph& g, int n, const std::vector<BasicCycle>& factors);

struct TreeGeneratorReport {
  int n = 0;
  int q = 0;
  std::size_t betti = 0;
  std::size_t candidates = 0;
  GenerationVerdict verdict;
};

struct LabOptions {
  std::size_t max_cells = 5'000'000;
  int jobs = 1;
};

/// Products of basic classes over all embedded stars (every essential vertex) and H's
/// (two essential vertices with no essential vertex between them, any two further
/// edges at each), all particle subsets and all parkings; checked against H_q over Z.
TreeGeneratorReport verify_tree_generators(const Graph& tree, int n, int q, const LabOptions& options = {});

/// The degree bound proved for the family: interval n, circle 6n, glued trees 2n,
/// point-glued graphs 3n; none otherwise.
std::optional<int> paper_degree_bound(const FamilyDescriptor& family, int n);

struct DegreeVerdict {
  int degree = 0;
  bool over_q = false;
  bool over_z = false;
  std::size_t missing_rank = 0;
  std::size_t supports = 0;
  std::size_t candidates = 0;
};

struct GenerationReport {
  FamilyKind kind = FamilyKind::WedgeFI;
  int n = 0;
  int q = 0;
  FamilySizes sizes;
  int degree = 0;
  std::size_t betti = 0;
  bool over_q = false;
  bool over_z = false;
  std::size_t missing_rank = 0;
  std::optional<int> d_min;
  std::optional<int> paper_bound;
  std::optional<bool> pass;  // verdict at the bound clamped to the sizes
  std::vector<DegreeVerdict> trail;
  std::size_t cells = 0;
  double seconds = 0;
  bool partial = false;
  std::string partial_reason;
};

/// Do the classes pushed in from all degree-d supports generate H_q at size K?
/// The degree is uniform across coordinates and clamped to each size. d_min is found
/// by lowering the degree while the Z-verdict holds (or raising it up to K when it
/// fails at d). A budget overrun yields a partial report instead of an exception.
GenerationReport generation_degree_check(const FamilyDescriptor& family, int n, int q, int degree,
                                         const FamilySizes& sizes, const LabOptions& options = {});

/// Verdict at a single degree, without the d_min search.
DegreeVerdict generation_verdict(const CubeComplex& model, const FamilyDescriptor& family, int q, int degree,
                                 const FamilySizes& sizes, int jobs = 1);

struct PolynomialFit {
  std::vector<int> ks;
  std::vector<std::size_t> dims;
  std::vector<Rational> coefficients;  // constant term first, trailing zeros trimmed
  int degree = -1;                     // -1 for the zero polynomial
  std::vector<Rational> predictions;   // for every window point
  bool fits = false;
};

/// Exact interpolation through the first max_degree + 1 points; fits when the
/// polynomial reproduces every later point. Needs at least `holdout` later points.
PolynomialFit fit_polynomial(const std::vector<int>& ks, const std::vector<std::size_t>& dims, int max_degree,
                             int holdout);

/// b_q of the family member at the diagonal size (k, ..., k) for each k in the window.
std::vector<std::size_t> family_betti_numbers(const FamilyDescriptor& family, int n, int q, const std::vector<int>& ks,
                                              const LabOptions& options = {});

PolynomialFit dimension_polynomial_check(const FamilyDescriptor& family, int n, int q, int k0, int k1, int max_degree,
                                         int holdout, const LabOptions& options = {});

}  // namespace confstab

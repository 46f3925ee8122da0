#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "confstab/family.hpp"
#include "confstab/graph.hpp"
#include "confstab/sparse_matrix.hpp"

namespace confstab {

enum class ModelKind {
  Paper,   ///< particles at i/(l+1) on edges, cubes sweep extremal particles to vertices
  Abrams,  ///< classical discretized model on a subdivided graph
};

/// Where one particle sits in a cell.
///
/// Paper model: on an edge, `slot` is the 0-based position counted from the edge's
/// tail; `move` is the end (0 = tail, 1 = head) the particle sweeps to, or -1.
/// Abrams model: a particle on an edge spans the closed edge (`move` = 1, the cube
/// axis runs from tail to head); `slot` is always 0.
struct ParticlePlacement {
  bool on_edge = false;
  int site = 0;
  int slot = 0;
  int move = -1;
  friend bool operator==(const ParticlePlacement&, const ParticlePlacement&) = default;
};

struct ModelCell {
  std::vector<ParticlePlacement> particles;

  [[nodiscard]] int dimension() const;
  /// Canonical byte encoding (4 bytes per particle); equal cells have equal keys.
  [[nodiscard]] std::string key() const;
  static ModelCell from_key(std::string_view key);
  friend bool operator==(const ModelCell&, const ModelCell&) = default;
};

/// One face of a cube with its incidence sign.
struct SignedFace {
  ModelCell face;
  int sign = 0;
};

/// Faces of `c` in boundary order: axes are the moving particles in label order,
/// and axis i (1-based) contributes (-1)^(i+1) * (face1 - face0).
std::vector<SignedFace> cell_boundary(ModelKind kind, const Graph& g, const ModelCell& c);

struct BuildOptions {
  std::size_t max_cells = 5'000'000;
};

/// Finite cube complex with exact integer boundary matrices. Cells of each dimension
/// are stored sorted by key; boundary(q) maps C_q to C_{q-1}.
class CubeComplex {
 public:
  CubeComplex() = default;

  /// Builds the complex from its cells. Every face of every cell must be present.
  static CubeComplex assemble(ModelKind kind, Graph graph, int particles, std::vector<bool> sinks,
                              std::vector<std::vector<std::string>> keys_by_dimension);

  [[nodiscard]] ModelKind kind() const { return kind_; }
  [[nodiscard]] const Graph& graph() const { return graph_; }
  [[nodiscard]] int particles() const { return particles_; }
  [[nodiscard]] const std::vector<bool>& sinks() const { return sinks_; }

  /// Highest dimension with a cell; -1 for the empty complex.
  [[nodiscard]] int top_dimension() const { return static_cast<int>(keys_.size()) - 1; }
  [[nodiscard]] std::size_t num_cells(int q) const;
  [[nodiscard]] std::size_t total_cells() const;
  [[nodiscard]] std::vector<std::size_t> f_vector() const;
  [[nodiscard]] std::int64_t euler_characteristic() const;

  [[nodiscard]] const std::string& cell_key(int q, std::size_t i) const;
  [[nodiscard]] ModelCell cell(int q, std::size_t i) const { return ModelCell::from_key(cell_key(q, i)); }
  [[nodiscard]] std::optional<std::size_t> index_of(int q, const std::string& key) const;
  [[nodiscard]] std::optional<std::size_t> index_of(const ModelCell& c) const {
    return index_of(c.dimension(), c.key());
  }

  /// C_q -> C_{q-1}. Zero-sized shapes outside 1..top_dimension().
  [[nodiscard]] SparseIntMatrix boundary(int q) const;
  [[nodiscard]] const SparseIntMatrix& boundary_ref(int q) const;

 private:
  ModelKind kind_ = ModelKind::Paper;
  Graph graph_;
  int particles_ = 0;
  std::vector<bool> sinks_;
  std::vector<std::vector<std::string>> keys_;
  std::vector<std::unordered_map<std::string, std::size_t>> index_;
  std::vector<SparseIntMatrix> boundary_;  // boundary_[q] for q = 0..top+1
};

/// The combinatorial model of ConfSink_n(g, sinks). `sinks` lists vertex ids.
CubeComplex build_model(const Graph& g, int n, const std::vector<VertexId>& sinks = {},
                        const BuildOptions& options = {});

/// Classical discretized configuration complex on subdivide(g, n + 1); no sinks.
CubeComplex build_abrams_oracle(const Graph& g, int n, const BuildOptions& options = {});

/// Cells of c whose particles all lie in h, with the index inclusion into c.
struct SupportedSubcomplex {
  CubeComplex complex;
  std::vector<std::vector<std::size_t>> inclusion;  // inclusion[q][i] = index in c
};
SupportedSubcomplex subcomplex_supported_in(const CubeComplex& c, const Subgraph& h);

/// Counts cells of the paper model without storing them.
std::size_t count_model_cells(const Graph& g, int n, const std::vector<VertexId>& sinks = {});

/// Image of a cell under a graph automorphism, with the orientation sign of the cube.
SignedFace map_cell(ModelKind kind, const Graph& g, const GraphAutomorphism& a, const ModelCell& c);

}  // namespace confstab

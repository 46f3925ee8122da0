#pragma once

#include <vector>

#include "confstab/graph.hpp"

namespace confstab {

enum class FamilyKind {
  WedgeFI,        ///< base with j_i copies of G_i glued along H_i, one coordinate per i
  IntervalDelta,  ///< interval with k copies of a based graph wedged on it
  CircleLambda,   ///< circle with k copies of a based graph wedged on it
};

/// One coordinate of a glued family: the summand graph and how it attaches.
struct Summand {
  Graph graph;
  /// Pairs (base id, summand id) marking H_i. Ignored for the interval/circle kinds,
  /// which always wedge at the summand's basepoint.
  GlueMap glue;
};

struct FamilyDescriptor {
  FamilyKind kind = FamilyKind::WedgeFI;
  Graph base;
  std::vector<Summand> summands;

  [[nodiscard]] int arity() const { return static_cast<int>(summands.size()); }
  /// Throws InvalidArgument when the descriptor cannot be realized.
  void validate() const;
};

/// base with copies of `summand` wedged at the basepoints (one coordinate).
FamilyDescriptor make_wedge_family(const Graph& base, const Graph& summand);
/// Interval (resp. circle) with copies of the based graph g wedged along it.
FamilyDescriptor make_interval_family(const Graph& g);
FamilyDescriptor make_circle_family(const Graph& g);

/// Per-coordinate sizes (j_1, ..., j_l). Interval and circle families have arity 1.
using FamilySizes = std::vector<int>;

/// Builds the family member at the given sizes, labeled by summand.
///
/// WedgeFI: the base keeps ids 0.. and label (0, 0); copy m of coordinate i gets
/// label (i, m) and is appended in coordinate-major, copy-minor order.
///
/// IntervalDelta: backbone path b_0 - ... - b_{k+1} (label (0, 0)), copy m wedged at
/// b_{m+1} with label (1, m).
///
/// CircleLambda: backbone cycle c_0 - ... - c_k - c_0 with max(k + 1, 2) edges,
/// copy m wedged at c_{m+1}; c_0 carries no copy.
Graph realize_family(const FamilyDescriptor& family, const FamilySizes& sizes);

/// Images of all degree-d objects in the size-K member, as subgraphs of
/// realize_family(family, K): the base (or backbone) plus a choice of d_i copies per
/// coordinate. Ordered lexicographically by the chosen copy indices.
std::vector<Subgraph> support_embeddings(const FamilyDescriptor& family, const FamilySizes& degree,
                                         const FamilySizes& sizes);

/// Graph automorphism of a WedgeFI member permuting copies inside each coordinate.
/// `perms[i][m]` is the image copy of copy m in coordinate i + 1.
struct GraphAutomorphism {
  std::vector<VertexId> vertex_map;
  std::vector<EdgeId> edge_map;
};
GraphAutomorphism summand_permutation(const FamilyDescriptor& family, const FamilySizes& sizes,
                                      const std::vector<std::vector<int>>& perms);

/// Checks that the maps form an automorphism of g. Orientation reversal is allowed.
bool is_automorphism(const Graph& g, const GraphAutomorphism& a);

}  // namespace confstab

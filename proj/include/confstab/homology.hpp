#pragma once

#include <cstddef>
#include <vector>

#include "confstab/complex.hpp"
#include "confstab/family.hpp"
#include "confstab/sparse_matrix.hpp"

namespace confstab {

using RationalMatrix = std::vector<std::vector<Rational>>;  // row-major

/// Betti number and torsion of one degree.
struct HomologyGroup {
  int degree = 0;
  std::size_t betti = 0;
  std::vector<BigInt> torsion;  // elementary divisors > 1
};

/// H_q of a cube complex with a free-part cycle basis and a solver for coordinates.
///
/// The basis classes form a Q-basis of H_q (x) Q. When `integral_basis()` holds (no
/// non-unit pivots were met) they are a Z-basis of H_q modulo torsion and
/// projections of integral cycles have integer coordinates.
class HomologyPresentation {
 public:
  [[nodiscard]] int degree() const { return group_.degree; }
  [[nodiscard]] std::size_t betti() const { return group_.betti; }
  [[nodiscard]] const std::vector<BigInt>& torsion() const { return group_.torsion; }
  [[nodiscard]] const HomologyGroup& group() const { return group_; }
  [[nodiscard]] const std::vector<Chain>& cycle_basis() const { return basis_; }
  [[nodiscard]] bool integral_basis() const { return integral_; }

  /// Coordinates of [z] in the cycle basis. Throws InvalidArgument unless z is a cycle.
  [[nodiscard]] std::vector<Rational> project(const Chain& z) const;

 private:
  friend HomologyPresentation homology(const CubeComplex& c, int q);

  HomologyGroup group_;
  std::vector<Chain> basis_;
  bool integral_ = true;
  SparseIntMatrix boundary_;  // d_q, for the cycle check
  // Reduced spanning set of Z_q with distinct lowest rows: boundaries first, then
  // basis representatives. basis_index_[k] >= 0 marks a basis pivot.
  std::vector<std::vector<std::pair<int, BigInt>>> pivots_;
  std::vector<int> basis_index_;
  std::vector<int> pivot_of_row_;
};

/// Full presentation of H_q (basis and solver). Meant for small to medium complexes.
HomologyPresentation homology(const CubeComplex& c, int q);

/// Betti numbers and torsion for every degree 0..top, using clearing between degrees.
std::vector<HomologyGroup> homology_groups(const CubeComplex& c);
std::vector<std::size_t> betti_numbers(const CubeComplex& c);

/// Rank of d_q over Q.
std::size_t boundary_rank(const CubeComplex& c, int q);

/// A Z-basis of the kernel of an integer matrix.
std::vector<Chain> kernel_basis(const SparseIntMatrix& d);

/// A Z-basis of the cycle group Z_q = ker d_q.
std::vector<Chain> cycle_space_basis(const CubeComplex& c, int q);

struct GenerationVerdict {
  bool generates_over_q = false;
  bool generates_over_z = false;
  std::size_t missing_rank = 0;
  std::size_t betti = 0;
};

/// Do the candidate q-cycles generate H_q? Over Z: candidates together with the
/// boundaries span the whole cycle lattice Z_q.
GenerationVerdict generated_check(const CubeComplex& c, int q, const std::vector<Chain>& candidates);

/// Re-indexes a chain of a supported subcomplex into the ambient complex.
Chain push_forward(const Chain& z, const std::vector<std::size_t>& inclusion);

struct InducedMap {
  std::vector<Chain> pushed_cycles;  // images of the subcomplex's basis cycles
  RationalMatrix matrix;             // betti(c) x betti(sub), in the two cycle bases
};
InducedMap induced_inclusion_map(const SupportedSubcomplex& sub, const CubeComplex& c, int q);
InducedMap induced_inclusion_map(const SupportedSubcomplex& sub, const CubeComplex& c,
                                 const HomologyPresentation& h_sub, const HomologyPresentation& h_c);

/// Signed cell permutation induced by a graph automorphism on every chain group.
class ChainAutomorphism {
 public:
  ChainAutomorphism() = default;
  explicit ChainAutomorphism(std::vector<std::vector<std::pair<std::size_t, int>>> images)
      : images_(std::move(images)) {}

  [[nodiscard]] Chain apply(int q, const Chain& z) const;
  /// (target cell, sign) of cell i in degree q.
  [[nodiscard]] std::pair<std::size_t, int> image(int q, std::size_t i) const {
    return images_.at(static_cast<std::size_t>(q)).at(i);
  }
  [[nodiscard]] int top_dimension() const { return static_cast<int>(images_.size()) - 1; }

 private:
  std::vector<std::vector<std::pair<std::size_t, int>>> images_;
};

/// Throws InvalidArgument unless `a` is a graph automorphism preserving the sinks.
ChainAutomorphism permutation_action_map(const CubeComplex& c, const GraphAutomorphism& a);

/// Matrix of the induced map on H_q (x) Q in the presentation's basis.
RationalMatrix induced_homology_matrix(const HomologyPresentation& h, const ChainAutomorphism& phi);

// Small exact matrix helpers.
std::size_t rational_matrix_rank(RationalMatrix m);
Rational trace(const RationalMatrix& m);
RationalMatrix rational_multiply(const RationalMatrix& a, const RationalMatrix& b);
RationalMatrix rational_identity(std::size_t n);

}  // namespace confstab

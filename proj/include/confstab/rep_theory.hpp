#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "confstab/family.hpp"
#include "confstab/sparse_matrix.hpp"

namespace confstab {

/// Weakly decreasing positive parts. The empty partition is the unique partition of 0.
class Partition {
 public:
  Partition() = default;
  /// Throws InvalidArgument unless the parts are positive and weakly decreasing.
  explicit Partition(std::vector<int> parts);

  [[nodiscard]] const std::vector<int>& parts() const { return parts_; }
  [[nodiscard]] int size() const { return size_; }
  [[nodiscard]] int length() const { return static_cast<int>(parts_.size()); }
  [[nodiscard]] int part(int i) const { return i < length() ? parts_[static_cast<std::size_t>(i)] : 0; }
  /// "(3,1,1)"; the empty partition prints as "()".
  [[nodiscard]] std::string to_string() const;
  static Partition parse(const std::string& text);

  friend auto operator<=>(const Partition& a, const Partition& b) { return a.parts_ <=> b.parts_; }
  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
  int size_ = 0;
};

/// All partitions of k, from (k) down to (1^k) in reverse lexicographic order.
std::vector<Partition> partitions(int k);

BigInt factorial(int k);

/// Size of the conjugacy class of cycle type mu: k! / prod(i^{m_i} m_i!).
BigInt class_size(const Partition& mu);

/// Canonical permutation of cycle type mu on {0..k-1}: contiguous cycles in increasing
/// label order, longest first. perm[i] is the image of i.
std::vector<int> class_representative(const Partition& mu);
Partition cycle_type(const std::vector<int>& perm);

/// chi^lambda(mu) by border-strip removal. Throws InvalidArgument on size mismatch.
std::int64_t mn_character(const Partition& lambda, const Partition& mu);

/// Dimension of the irreducible representation lambda by the hook length formula.
BigInt hook_length_dimension(const Partition& lambda);

/// chi[i][j] = chi^{partitions(k)[i]}(partitions(k)[j]).
std::vector<std::vector<std::int64_t>> character_table(int k);

/// (k - |mu|, mu_1, mu_2, ...); valid iff k - |mu| >= mu_1.
bool padding_valid(const Partition& mu, int k);
Partition pad(const Partition& mu, int k);
/// Drops the first part.
Partition unpad(const Partition& lambda);

/// Multiplicities of the irreducibles in a character given by its values on the
/// classes of partitions(k), in that order. Keys are full partitions of k.
/// Throws CorruptedCharacter for a non-integral or negative multiplicity.
std::map<Partition, BigInt> decompose(const std::vector<Rational>& values, int k);

/// Same for Sigma_{k1} x Sigma_{k2}; values[i][j] on (partitions(k1)[i], partitions(k2)[j]).
std::map<std::pair<Partition, Partition>, BigInt> decompose_product(const std::vector<std::vector<Rational>>& values,
                                                                    int k1, int k2);

/// One conjugacy class of Sigma_{k_1} x ... with its character value.
struct ClassValue {
  std::vector<Partition> cycle_types;
  BigInt class_size;
  Rational value;
};

/// Character of the summand-permutation action on H_q(Conf_n(member); Q).
struct CharacterReport {
  std::vector<int> sizes;  // k per coordinate
  int q = 0;
  int n = 0;
  std::size_t betti = 0;
  std::vector<ClassValue> class_data;
  /// Keys are unpadded partitions, one per coordinate.
  std::map<std::vector<Partition>, BigInt> multiplicities;
};

struct CharacterOptions {
  int max_k = 8;
  std::size_t max_cells = 5'000'000;
  int jobs = 1;
};

/// Trace of the permutation's action on H_q (x) Q of the WedgeFI member at `sizes`.
/// perms[i] permutes the copies of coordinate i + 1.
Rational homology_character(const FamilyDescriptor& family, const FamilySizes& sizes,
                            const std::vector<std::vector<int>>& perms, int n, int q,
                            const CharacterOptions& options = {});

/// Character on every (product) class and its decomposition. Arity 1 or 2 only.
CharacterReport character_report(const FamilyDescriptor& family, const FamilySizes& sizes, int n, int q,
                                 const CharacterOptions& options = {});

/// Dimension of the irreducible with the given unpadded labels at the given sizes.
BigInt padded_dimension(const std::vector<Partition>& unpadded, const std::vector<int>& sizes);

struct StabilityVerdict {
  bool stable = false;
  std::vector<std::vector<int>> window;  // sizes of each report, in order
  /// Unpadded label -> multiplicity at each window point.
  std::map<std::vector<Partition>, std::vector<BigInt>> table;
  std::vector<std::string> warnings;
};

/// Stable iff every (padding-valid) row is constant across the window. Rows whose
/// padding is invalid somewhere in the window are excluded with a warning. Throws
/// CorruptedCharacter when a report's multiplicities do not add up to its Betti number.
StabilityVerdict stability_verdict(const std::vector<CharacterReport>& reports);

}  // namespace confstab

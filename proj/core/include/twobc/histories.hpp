#pragma once

// Two-boundary probability measure over sequences of physical properties.
//
// For slots t_1 < ... < t_k with orthogonal resolutions {P^j_alpha} and
// forward interval unitaries U_j : t_j -> t_{j+1}, the chain operator of a
// sequence alpha = (alpha_1, ..., alpha_k) is
//
//   K_alpha = P^1_{alpha_1} U_1^dagger P^2_{alpha_2} ... U_{k-1}^dagger P^k_{alpha_k}
//
// (U_j^dagger = U(t_j, t_{j+1})). Each sequence gets the weight
// w_alpha = |Tr(rho_p K_alpha rho_m)| and
//
//   Prob(alpha) = w_alpha dim(S_alpha) / sum_beta w_beta dim(S_beta),
//
// where dim(S_alpha) = prod_j rank(P^j_{alpha_j}) is the trace of the sequence
// projector on the k-fold tensor space. The sequence projector itself is
// never materialized.

#include <cstddef>
#include <span>
#include <vector>

#include "twobc/hilbert.hpp"

namespace twobc {

/// An orthogonal resolution of the identity at one time slot.
class HistorySlot {
 public:
  /// Throws ValidationError/DimensionMismatch unless the projectors are
  /// pairwise orthogonal and sum to the identity.
  HistorySlot(std::size_t time_index, std::vector<Projector> basis, const Tolerances& tol = kDefaultTolerances);

  /// Rank-1 resolution from the columns of a unitary.
  static HistorySlot from_basis(std::size_t time_index, const UnitaryOperator& columns);

  std::size_t time_index() const noexcept { return time_index_; }
  std::size_t dim() const noexcept { return basis_.front().dim(); }
  std::size_t size() const noexcept { return basis_.size(); }
  const Projector& operator[](std::size_t label) const { return basis_.at(label); }
  const std::vector<Projector>& basis() const noexcept { return basis_; }

 private:
  std::size_t time_index_;
  std::vector<Projector> basis_;
};

struct HistorySequence {
  std::vector<std::size_t> labels;

  friend bool operator==(const HistorySequence&, const HistorySequence&) = default;
};

/// Chain operator in the single-copy space.
struct ChainOperator {
  ComplexOperator op;
};

/// Throws DimensionMismatch / InvalidArgument on a malformed sequence or interval list.
ChainOperator chain_operator(std::span<const HistorySlot> slots, const HistorySequence& seq,
                             std::span<const UnitaryOperator> intervals);

/// |Tr(rho_p K rho_m)|.
double sequence_weight(const DensityOperator& rho_p, const ChainOperator& k, const DensityOperator& rho_m);

struct HistoryEntry {
  HistorySequence sequence;
  double weight = 0.0;
  double multiplicity = 1.0;  ///< dim(S_alpha)
  double probability = 0.0;
};

struct HistoryDistribution {
  std::vector<HistoryEntry> entries;  ///< lexicographic in slot labels, last slot fastest
  double normalization = 0.0;

  /// Probability of one sequence; throws InvalidArgument if it was not enumerated.
  double probability(const HistorySequence& seq) const;
};

struct HistoryOptions {
  std::size_t sequence_cap = 1'000'000;
  Tolerances tol{};
};

/// Enumerates every label sequence. Throws SequenceCapExceeded when the number
/// of sequences exceeds options.sequence_cap and AllWeightsZero when the
/// normalization does not exceed tol.norm.
HistoryDistribution history_distribution(const DensityOperator& rho_p, std::span<const HistorySlot> slots,
                                         std::span<const UnitaryOperator> intervals, const DensityOperator& rho_m,
                                         const HistoryOptions& options = {});

}  // namespace twobc

#include "twobc/histories.hpp"

#include <cmath>
#include <limits>

namespace twobc {

namespace {

void check_intervals(std::span<const HistorySlot> slots, std::span<const UnitaryOperator> intervals) {
  if (slots.empty()) throw InvalidArgument("history needs at least one slot");
  if (intervals.size() + 1 != slots.size()) {
    throw InvalidArgument("history with " + std::to_string(slots.size()) + " slots needs " +
                          std::to_string(slots.size() - 1) + " intervals, got " + std::to_string(intervals.size()));
  }
  const std::size_t d = slots.front().dim();
  for (const auto& s : slots) {
    if (s.dim() != d) throw DimensionMismatch("history slots have different dimensions");
  }
  for (const auto& u : intervals) {
    if (u.dim() != d) throw DimensionMismatch("interval unitary dimension does not match slot dimension");
  }
}

}  // namespace

HistorySlot::HistorySlot(std::size_t time_index, std::vector<Projector> basis, const Tolerances& tol)
    : time_index_(time_index), basis_(std::move(basis)) {
  if (basis_.empty()) throw InvalidArgument("history slot needs at least one projector");
  const auto n = static_cast<Eigen::Index>(basis_.front().dim());
  Matrix sum = Matrix::Zero(n, n);
  double overlap = 0.0;
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    if (basis_[i].dim() != basis_.front().dim()) throw DimensionMismatch("history slot projectors differ in dimension");
    sum += basis_[i].matrix();
    for (std::size_t j = i + 1; j < basis_.size(); ++j) {
      overlap = std::max(overlap, max_abs(basis_[i].matrix() * basis_[j].matrix()));
    }
  }
  const double completeness = max_abs(sum - Matrix::Identity(n, n));
  Verdict verdict{OperatorKind::projector,
                  {InvariantCheck{"pairwise_orthogonal", overlap, tol.idem, overlap <= tol.idem},
                   InvariantCheck{"resolves_identity", completeness, tol.recon, completeness <= tol.recon}}};
  if (!verdict.passed()) throw ValidationError("history slot " + std::to_string(time_index), std::move(verdict));
}

HistorySlot HistorySlot::from_basis(std::size_t time_index, const UnitaryOperator& columns) {
  std::vector<Projector> basis;
  const Matrix& m = columns.matrix();
  basis.reserve(static_cast<std::size_t>(m.cols()));
  for (Eigen::Index c = 0; c < m.cols(); ++c) basis.push_back(Projector::onto_columns(m.col(c)));
  return HistorySlot(time_index, std::move(basis));
}

ChainOperator chain_operator(std::span<const HistorySlot> slots, const HistorySequence& seq,
                             std::span<const UnitaryOperator> intervals) {
  check_intervals(slots, intervals);
  if (seq.labels.size() != slots.size()) {
    throw InvalidArgument("sequence length " + std::to_string(seq.labels.size()) + " does not match " +
                          std::to_string(slots.size()) + " slots");
  }
  for (std::size_t j = 0; j < slots.size(); ++j) {
    if (seq.labels[j] >= slots[j].size()) throw InvalidArgument("sequence label out of range");
  }
  Matrix acc = slots[0][seq.labels[0]].matrix();
  for (std::size_t j = 1; j < slots.size(); ++j) {
    acc = acc * intervals[j - 1].matrix().adjoint();
    acc = acc * slots[j][seq.labels[j]].matrix();
  }
  return ChainOperator{ComplexOperator(std::move(acc))};
}

double sequence_weight(const DensityOperator& rho_p, const ChainOperator& k, const DensityOperator& rho_m) {
  if (rho_p.dim() != k.op.dim() || rho_m.dim() != k.op.dim()) {
    throw DimensionMismatch("sequence weight: boundary and chain operator dimensions differ");
  }
  return std::abs((rho_p.matrix() * k.op.matrix() * rho_m.matrix()).trace());
}

double HistoryDistribution::probability(const HistorySequence& seq) const {
  for (const auto& e : entries) {
    if (e.sequence == seq) return e.probability;
  }
  throw InvalidArgument("sequence not part of the distribution");
}

HistoryDistribution history_distribution(const DensityOperator& rho_p, std::span<const HistorySlot> slots,
                                         std::span<const UnitaryOperator> intervals, const DensityOperator& rho_m,
                                         const HistoryOptions& options) {
  check_intervals(slots, intervals);
  const std::size_t d = slots.front().dim();
  if (rho_p.dim() != d || rho_m.dim() != d) {
    throw DimensionMismatch("history boundaries do not match slot dimension");
  }

  std::size_t total = 1;
  for (const auto& s : slots) {
    if (total > options.sequence_cap / s.size()) {
      throw SequenceCapExceeded("history enumeration exceeds the cap of " + std::to_string(options.sequence_cap) +
                                " sequences");
    }
    total *= s.size();
  }

  std::vector<Matrix> adjoints;
  adjoints.reserve(intervals.size());
  for (const auto& u : intervals) adjoints.push_back(u.matrix().adjoint());

  HistoryDistribution dist;
  dist.entries.reserve(total);

  // Depth-first over labels, reusing chain prefixes. The product is associated
  // left to right exactly as in chain_operator().
  const std::size_t k = slots.size();
  std::vector<Matrix> prefix(k);
  std::vector<double> multiplicity(k);
  std::vector<std::size_t> labels(k, 0);
  std::size_t depth = 0;
  bool more = true;
  while (more) {
    const Projector& p = slots[depth][labels[depth]];
    if (depth == 0) {
      prefix[0] = p.matrix();
      multiplicity[0] = static_cast<double>(p.rank());
    } else {
      prefix[depth] = (prefix[depth - 1] * adjoints[depth - 1]) * p.matrix();
      multiplicity[depth] = multiplicity[depth - 1] * static_cast<double>(p.rank());
    }

    if (depth + 1 < k) {
      ++depth;
      labels[depth] = 0;
      continue;
    }

    HistoryEntry entry;
    entry.sequence.labels = labels;
    entry.weight = std::abs((rho_p.matrix() * prefix[depth] * rho_m.matrix()).trace());
    entry.multiplicity = multiplicity[depth];
    dist.normalization += entry.weight * entry.multiplicity;
    dist.entries.push_back(std::move(entry));

    // Advance to the next label sequence.
    while (++labels[depth] == slots[depth].size()) {
      if (depth == 0) {
        more = false;
        break;
      }
      --depth;
    }
  }

  if (!(dist.normalization > options.tol.norm)) {
    throw AllWeightsZero("no history sequence is consistent with the boundaries (N = " +
                         std::to_string(dist.normalization) + ")");
  }
  for (auto& e : dist.entries) e.probability = e.weight * e.multiplicity / dist.normalization;
  return dist;
}

}  // namespace twobc

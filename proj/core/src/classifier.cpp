#include "twobc/classifier.hpp"

#include <cmath>

namespace twobc {

Matrix embed(const TaggedOp& op, const SubsystemLayout& layout) {
  const auto& subs = op.subsystems;
  if (subs.empty()) throw UntaggedInterval("schedule operation is not tagged with the subsystems it acts on");

  const std::size_t n = layout.size();
  std::vector<bool> touched(n, false);
  std::size_t op_dim = 1;
  for (auto s : subs) {
    if (s >= n) throw InvalidArgument("schedule operation touches unknown subsystem " + std::to_string(s));
    if (touched[s]) throw InvalidArgument("schedule operation lists subsystem " + std::to_string(s) + " twice");
    touched[s] = true;
    op_dim *= layout.dim(s);
  }
  if (op_dim != op.op.dim()) {
    throw DimensionMismatch("operation of dimension " + std::to_string(op.op.dim()) +
                            " does not match its tagged subsystems (" + std::to_string(op_dim) + ")");
  }

  const std::size_t total = layout.total();
  std::vector<std::size_t> stride(n, 1);
  for (std::size_t s = n - 1; s > 0; --s) stride[s - 1] = stride[s] * layout.dim(s);

  // Split every full index into (index within the touched subsystems in the
  // op's own order, index of the untouched remainder).
  std::vector<std::size_t> local(total), rest(total);
  for (std::size_t full = 0; full < total; ++full) {
    std::size_t l = 0;
    for (auto s : subs) l = l * layout.dim(s) + (full / stride[s]) % layout.dim(s);
    std::size_t r = 0;
    for (std::size_t s = 0; s < n; ++s) {
      if (!touched[s]) r = r * layout.dim(s) + (full / stride[s]) % layout.dim(s);
    }
    local[full] = l;
    rest[full] = r;
  }

  const auto t = static_cast<Eigen::Index>(total);
  const Matrix& m = op.op.matrix();
  Matrix out = Matrix::Zero(t, t);
  for (std::size_t row = 0; row < total; ++row) {
    for (std::size_t col = 0; col < total; ++col) {
      if (rest[row] != rest[col]) continue;
      out(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) =
          m(static_cast<Eigen::Index>(local[row]), static_cast<Eigen::Index>(local[col]));
    }
  }
  return out;
}

UnitaryOperator interval_unitary(const ScheduleInterval& interval, const SubsystemLayout& layout) {
  const auto t = static_cast<Eigen::Index>(layout.total());
  Matrix acc = Matrix::Identity(t, t);
  for (const auto& op : interval.ops) acc = embed(op, layout) * acc;
  return UnitaryOperator(std::move(acc));
}

UnitaryOperator compose_schedule(const FactoredSchedule& schedule, const SubsystemLayout& layout) {
  const auto t = static_cast<Eigen::Index>(layout.total());
  Matrix acc = Matrix::Identity(t, t);
  for (const auto& interval : schedule) acc = interval_unitary(interval, layout).matrix() * acc;
  return UnitaryOperator(std::move(acc));
}

bool is_generalized_permutation(const Matrix& m, double tol) {
  for (Eigen::Index c = 0; c < m.cols(); ++c) {
    int unit_entries = 0;
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      const double a = std::abs(m(r, c));
      if (std::abs(a - 1.0) <= tol) {
        ++unit_entries;
      } else if (a > tol) {
        return false;
      }
    }
    if (unit_entries != 1) return false;
  }
  return true;
}

std::string_view to_string(EventType type) { return type == EventType::type_i ? "TypeI" : "TypeII"; }

ClassificationReport classify_subsystems(const FactoredSchedule& schedule, const SubsystemLayout& layout,
                                         std::span<const UnitaryOperator> preferred_bases, std::size_t time,
                                         const Tolerances& tol) {
  const std::size_t n = layout.size();
  if (preferred_bases.size() != n) throw InvalidArgument("classifier needs one preferred basis per subsystem");
  for (std::size_t s = 0; s < n; ++s) {
    if (preferred_bases[s].dim() != layout.dim(s)) {
      throw DimensionMismatch("preferred basis of subsystem " + std::to_string(s) + " has the wrong dimension");
    }
  }
  if (time > schedule.size()) {
    throw InvalidArgument("classification time " + std::to_string(time) + " lies beyond the final boundary " +
                          std::to_string(schedule.size()));
  }

  // superposes[j][s]: interval j puts subsystem s into a superposition of its preferred basis.
  std::vector<std::vector<bool>> superposes(schedule.size(), std::vector<bool>(n, false));
  for (std::size_t j = 0; j < schedule.size(); ++j) {
    for (const auto& op : schedule[j].ops) {
      embed(op, layout);  // validates tags and dimensions
      Matrix basis = preferred_bases[op.subsystems.front()].matrix();
      for (std::size_t k = 1; k < op.subsystems.size(); ++k) {
        basis = kron(basis, preferred_bases[op.subsystems[k]].matrix());
      }
      const Matrix in_basis = basis.adjoint() * op.op.matrix() * basis;
      if (!is_generalized_permutation(in_basis, tol.recon)) {
        for (auto s : op.subsystems) superposes[j][s] = true;
      }
    }
  }

  ClassificationReport report;
  report.time = time;
  for (std::size_t s = 0; s < n; ++s) {
    SubsystemVerdict v;
    v.subsystem = s;
    for (std::size_t j = time; j-- > 0;) {
      if (superposes[j][s]) {
        v.initial_witness = j;
        break;
      }
    }
    for (std::size_t j = time; j < schedule.size(); ++j) {
      if (superposes[j][s]) {
        v.final_witness = j;
        break;
      }
    }
    v.fixed_by_initial = !v.initial_witness.has_value();
    v.fixed_by_final = !v.final_witness.has_value();
    v.type = (v.fixed_by_initial || v.fixed_by_final) ? EventType::type_i : EventType::type_ii;
    if (v.type == EventType::type_i) report.composite = EventType::type_i;
    report.subsystems.push_back(v);
  }
  return report;
}

}  // namespace twobc

#pragma once

// Type I / Type II classification of subsystems on a factored schedule.
//
// A schedule is a list of intervals; interval j takes time j to time j + 1.
// Each interval is an ordered list of operations tagged with the subsystems
// they act on. An operation on one subsystem is local; an operation on several
// is an entangling event.
//
// A subsystem is non-superposing over a range of intervals when every tagged
// operation touching it in that range, written in the preferred product basis
// of the subsystems it acts on, is a generalized permutation matrix. Products
// of generalized permutations stay generalized permutations, so this is the
// same as requiring the effective map up to every intermediate time to be one.
//
// At time t a subsystem is Type I when it is non-superposing over [t, t_f]
// or over [t_i, t]; otherwise it is Type II. A composite is Type I when at
// least one subsystem is.

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "twobc/hilbert.hpp"

namespace twobc {

struct TaggedOp {
  std::vector<std::size_t> subsystems;  ///< in the tensor order of `op`
  UnitaryOperator op;
};

struct ScheduleInterval {
  std::vector<TaggedOp> ops;  ///< applied in order; an empty list is the identity
};

using FactoredSchedule = std::vector<ScheduleInterval>;

/// Embeds `op` acting on `subsystems` (in that order) into the full layout.
/// Throws UntaggedInterval for an empty subsystem list, InvalidArgument for
/// repeated or out-of-range indices, DimensionMismatch for a wrong op size.
Matrix embed(const TaggedOp& op, const SubsystemLayout& layout);

/// Full-space unitary of one interval (later ops multiply on the left).
UnitaryOperator interval_unitary(const ScheduleInterval& interval, const SubsystemLayout& layout);

/// U(t_f, t_i) = U_{T-1} ... U_0; identity for an empty schedule.
UnitaryOperator compose_schedule(const FactoredSchedule& schedule, const SubsystemLayout& layout);

/// Every column holds exactly one entry of modulus 1 (within tol) and zeros elsewhere.
bool is_generalized_permutation(const Matrix& m, double tol = kDefaultTolerances.recon);

enum class EventType { type_i, type_ii };

std::string_view to_string(EventType type);

struct SubsystemVerdict {
  std::size_t subsystem = 0;
  EventType type = EventType::type_ii;
  bool fixed_by_initial = false;  ///< non-superposing over [t_i, t]
  bool fixed_by_final = false;    ///< non-superposing over [t, t_f]
  /// Latest interval before t that superposes this subsystem.
  std::optional<std::size_t> initial_witness;
  /// Earliest interval at or after t that superposes this subsystem.
  std::optional<std::size_t> final_witness;
};

struct ClassificationReport {
  std::size_t time = 0;
  std::vector<SubsystemVerdict> subsystems;
  EventType composite = EventType::type_ii;
};

/// `time` ranges over 0..schedule.size(). `preferred_bases` holds one unitary
/// per subsystem whose columns are that subsystem's preferred basis.
ClassificationReport classify_subsystems(const FactoredSchedule& schedule, const SubsystemLayout& layout,
                                         std::span<const UnitaryOperator> preferred_bases, std::size_t time,
                                         const Tolerances& tol = kDefaultTolerances);

}  // namespace twobc

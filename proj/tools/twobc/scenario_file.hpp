#pragma once

// Declarative scenario files (YAML). See README.md for the grammar.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "twobc/twobc.hpp"

namespace twobc::cli {

/// Syntax or schema problem in a scenario file. Line and column are 1-based;
/// 0 means the position is unknown.
class ScenarioError : public Error {
 public:
  ScenarioError(const std::string& source, std::size_t line, std::size_t column, const std::string& message);

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

class UnresolvedReference : public ScenarioError {
 public:
  using ScenarioError::ScenarioError;
};

/// A declared operator fails the invariants of its kind, or operators do not
/// fit the layout.
class ScenarioValidationError : public ScenarioError {
 public:
  using ScenarioError::ScenarioError;
};

struct OperatorDef {
  std::string name;
  OperatorKind kind = OperatorKind::unitary;
  Matrix value;  ///< square matrix, or a dim x 1 column for states
};

struct ScheduledOp {
  std::string op;
  std::vector<std::size_t> on;
};

/// Either a list of projector names or the name of a unitary whose columns
/// give a rank-1 basis.
struct SlotDef {
  std::vector<std::string> projectors;
  std::string basis;
};

struct Parameters {
  std::optional<double> theta;
  std::optional<double> phi;
  std::optional<std::vector<Complex>> mu;
  std::optional<std::size_t> runs;
  std::optional<std::uint64_t> seed;
  std::optional<InstrumentDims> dims;
  std::optional<std::size_t> time;
  std::optional<std::size_t> cap;
};

struct Scenario {
  int version = 1;
  std::optional<SubsystemLayout> layout;
  std::vector<OperatorDef> operators;
  std::vector<std::vector<ScheduledOp>> schedule;
  std::map<std::string, std::string> boundaries;  ///< role -> operator name
  std::vector<SlotDef> slots;
  std::vector<std::string> preferred_bases;
  Parameters parameters;

  const OperatorDef* find(std::string_view name) const;

  UnitaryOperator unitary(std::string_view name) const;
  Projector projector(std::string_view name) const;
  /// Accepts density operators and states (as pure densities).
  DensityOperator density(std::string_view name) const;

  bool has_boundary(std::string_view role) const { return boundaries.count(std::string(role)) != 0; }
  FactoredSchedule factored_schedule() const;
  std::vector<HistorySlot> history_slots() const;
  /// Computational bases when none are declared.
  std::vector<UnitaryOperator> preferred_basis_ops() const;
};

bool operator==(const Scenario& lhs, const Scenario& rhs);

inline constexpr int kScenarioVersion = 1;

Scenario parse_scenario(std::string_view text, const std::string& source = "<scenario>");
Scenario load_scenario(const std::filesystem::path& path);

/// Every operator is written out as an explicit matrix or vector with
/// round-trip precision, so parse(serialize(s)) == s.
std::string serialize_scenario(const Scenario& scenario);

}  // namespace twobc::cli

#pragma once

// Dense complex operator algebra over finite tensor-product Hilbert spaces.
//
// Conventions used throughout the library:
//   * storage is dense (Eigen::MatrixXcd), no sparse path;
//   * subsystem 0 is the leftmost, slowest-varying tensor index;
//   * every validated type is immutable once constructed.

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "twobc/errors.hpp"

namespace twobc {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

/// Absolute tolerances on max-entry deviations.
struct Tolerances {
  double norm = 1e-10;
  double herm = 1e-10;
  double idem = 1e-10;
  double unit = 1e-10;
  double psd = 1e-10;
  double recon = 1e-9;
  double degen = 1e-8;
};

inline constexpr Tolerances kDefaultTolerances{};

/// Largest absolute entry of a matrix (0 for an empty matrix).
double max_abs(const Matrix& m);

// ---------------------------------------------------------------------------
// Validation

enum class OperatorKind { density, projector, unitary, state };

std::string_view to_string(OperatorKind kind);

struct InvariantCheck {
  std::string name;
  double violation = 0.0;
  double tolerance = 0.0;
  bool passed = true;
};

/// Outcome of validate(): one entry per invariant of the requested kind.
struct Verdict {
  OperatorKind kind = OperatorKind::density;
  std::vector<InvariantCheck> checks;

  bool passed() const;
  /// Largest violation among the failed checks, or among all checks if none failed.
  double max_violation() const;
  /// Name of the first failed invariant, empty when everything passed.
  std::string first_failure() const;
  std::string summary() const;
};

/// Checks `op` against the invariants of `kind`. Never throws on an invariant
/// failure; a non-square input is reported as a failed "square" check.
///
/// For OperatorKind::state the operator is read as a density matrix that must
/// also be pure (Tr rho^2 = 1).
Verdict validate(const Matrix& op, OperatorKind kind, const Tolerances& tol = kDefaultTolerances);

/// Column-vector form of the state check: finite entries and unit norm.
Verdict validate_state(const Vector& amplitudes, const Tolerances& tol = kDefaultTolerances);

class ValidationError : public Error {
 public:
  explicit ValidationError(Verdict verdict);
  ValidationError(std::string context, Verdict verdict);

  const Verdict& verdict() const noexcept { return verdict_; }

 private:
  Verdict verdict_;
};

// ---------------------------------------------------------------------------
// Operator types

class ComplexOperator {
 public:
  /// Throws ValidationError if `m` is empty, not square, or has non-finite entries.
  explicit ComplexOperator(Matrix m);

  static ComplexOperator identity(std::size_t dim);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const noexcept { return m_; }
  Complex trace() const { return m_.trace(); }
  ComplexOperator adjoint() const { return ComplexOperator(m_.adjoint()); }

 private:
  Matrix m_;
};

ComplexOperator operator*(const ComplexOperator& lhs, const ComplexOperator& rhs);

class StateVector {
 public:
  /// Throws ValidationError unless the amplitudes have unit norm within tol.norm.
  explicit StateVector(Vector amplitudes, const Tolerances& tol = kDefaultTolerances);

  /// Rescales `amplitudes` to unit norm; throws InvalidArgument for a zero vector.
  static StateVector normalized(Vector amplitudes);
  static StateVector basis(std::size_t dim, std::size_t index);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(v_.size()); }
  const Vector& amplitudes() const noexcept { return v_; }
  /// |psi><psi|
  Matrix outer() const { return v_ * v_.adjoint(); }

 private:
  Vector v_;
};

class DensityOperator {
 public:
  explicit DensityOperator(Matrix m, const Tolerances& tol = kDefaultTolerances);

  static DensityOperator pure(const StateVector& psi);
  static DensityOperator maximally_mixed(std::size_t dim);

  std::size_t dim() const noexcept { return op_.dim(); }
  const ComplexOperator& op() const noexcept { return op_; }
  const Matrix& matrix() const noexcept { return op_.matrix(); }
  double purity() const;

 private:
  ComplexOperator op_;
};

class Projector {
 public:
  explicit Projector(Matrix m, const Tolerances& tol = kDefaultTolerances);

  static Projector onto(const StateVector& psi);
  static Projector identity(std::size_t dim);
  /// Projector onto the span of the given orthonormal columns.
  static Projector onto_columns(const Matrix& orthonormal_columns);

  std::size_t dim() const noexcept { return op_.dim(); }
  std::size_t rank() const noexcept { return rank_; }
  const ComplexOperator& op() const noexcept { return op_; }
  const Matrix& matrix() const noexcept { return op_.matrix(); }
  bool is_identity(double tol = kDefaultTolerances.recon) const;

 private:
  ComplexOperator op_;
  std::size_t rank_ = 0;
};

class UnitaryOperator {
 public:
  explicit UnitaryOperator(Matrix m, const Tolerances& tol = kDefaultTolerances);

  static UnitaryOperator identity(std::size_t dim);

  std::size_t dim() const noexcept { return op_.dim(); }
  const ComplexOperator& op() const noexcept { return op_; }
  const Matrix& matrix() const noexcept { return op_.matrix(); }
  UnitaryOperator adjoint() const;

 private:
  ComplexOperator op_;
};

/// lhs * rhs as matrices (rhs acts first on a state).
UnitaryOperator operator*(const UnitaryOperator& lhs, const UnitaryOperator& rhs);

// ---------------------------------------------------------------------------
// Tensor structure

class SubsystemLayout {
 public:
  /// Throws InvalidArgument for an empty list or a zero dimension.
  explicit SubsystemLayout(std::vector<std::size_t> dims);

  const std::vector<std::size_t>& dims() const noexcept { return dims_; }
  std::size_t size() const noexcept { return dims_.size(); }
  std::size_t total() const noexcept { return total_; }
  std::size_t dim(std::size_t subsystem) const { return dims_.at(subsystem); }

  friend bool operator==(const SubsystemLayout&, const SubsystemLayout&) = default;

 private:
  std::vector<std::size_t> dims_;
  std::size_t total_ = 1;
};

/// Kronecker product, leftmost factor slowest-varying.
Matrix kron(const Matrix& lhs, const Matrix& rhs);

/// Kronecker product of all factors in order. Throws InvalidArgument if empty.
ComplexOperator tensor(std::span<const ComplexOperator> factors);
StateVector tensor(std::span<const StateVector> factors);

/// Traces out every subsystem not listed in `keep` (0-based subsystem indices).
/// The kept subsystems appear in ascending index order in the result.
ComplexOperator partial_trace(const ComplexOperator& op, const SubsystemLayout& layout,
                              std::span<const std::size_t> keep);

// ---------------------------------------------------------------------------
// Spectral analysis

struct SpectralComponent {
  double weight;
  Projector projector;
};

/// rho = sum_k weight_k P_k with distinct, strictly positive weights sorted in
/// descending order. Eigenvalues within `tol_degen` of the first eigenvalue of
/// a group share one eigenprojector; groups whose weight does not exceed
/// `tol_degen` are dropped as numerically zero.
std::vector<SpectralComponent> spectral_decompose(const DensityOperator& rho,
                                                  double tol_degen = kDefaultTolerances.degen);

}  // namespace twobc

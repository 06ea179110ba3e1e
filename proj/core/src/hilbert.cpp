#include "twobc/hilbert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace twobc {

namespace {

bool all_finite(const Matrix& m) {
  for (Eigen::Index j = 0; j < m.cols(); ++j) {
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
      const Complex z = m(i, j);
      if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
  }
  return true;
}

InvariantCheck make_check(std::string name, double violation, double tolerance) {
  return InvariantCheck{std::move(name), violation, tolerance, violation <= tolerance};
}

double min_eigenvalue_of_hermitian_part(const Matrix& m) {
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h, Eigen::EigenvaluesOnly);
  return solver.eigenvalues().minCoeff();
}

void require(const Verdict& verdict, const char* what) {
  if (!verdict.passed()) throw ValidationError(what, verdict);
}

}  // namespace

double max_abs(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().maxCoeff();
}

// ---------------------------------------------------------------------------
// Validation

std::string_view to_string(OperatorKind kind) {
  switch (kind) {
    case OperatorKind::density: return "density";
    case OperatorKind::projector: return "projector";
    case OperatorKind::unitary: return "unitary";
    case OperatorKind::state: return "state";
  }
  return "unknown";
}

bool Verdict::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.passed; });
}

double Verdict::max_violation() const {
  double worst = 0.0;
  for (const auto& c : checks) worst = std::max(worst, c.violation);
  return worst;
}

std::string Verdict::first_failure() const {
  for (const auto& c : checks) {
    if (!c.passed) return c.name;
  }
  return {};
}

std::string Verdict::summary() const {
  std::ostringstream os;
  os << to_string(kind) << ": " << (passed() ? "pass" : "fail");
  for (const auto& c : checks) {
    if (!c.passed) os << "; " << c.name << " violated by " << c.violation << " (tol " << c.tolerance << ")";
  }
  return os.str();
}

Verdict validate(const Matrix& op, OperatorKind kind, const Tolerances& tol) {
  Verdict verdict{kind, {}};
  auto& checks = verdict.checks;

  if (op.rows() == 0 || op.rows() != op.cols()) {
    checks.push_back(InvariantCheck{"square", std::numeric_limits<double>::infinity(), 0.0, false});
    return verdict;
  }
  if (!all_finite(op)) {
    checks.push_back(InvariantCheck{"finite", std::numeric_limits<double>::infinity(), 0.0, false});
    return verdict;
  }

  const auto n = op.rows();
  switch (kind) {
    case OperatorKind::density:
    case OperatorKind::state: {
      checks.push_back(make_check("hermitian", max_abs(op - op.adjoint()), tol.herm));
      const double min_ev = min_eigenvalue_of_hermitian_part(op);
      checks.push_back(make_check("positive_semidefinite", std::max(0.0, -min_ev), tol.psd));
      checks.push_back(make_check("unit_trace", std::abs(op.trace() - Complex{1.0, 0.0}), tol.norm));
      if (kind == OperatorKind::state) {
        const Complex purity = (op * op).trace();
        checks.push_back(make_check("pure", std::abs(purity - Complex{1.0, 0.0}), tol.norm));
      }
      break;
    }
    case OperatorKind::projector:
      checks.push_back(make_check("hermitian", max_abs(op - op.adjoint()), tol.herm));
      checks.push_back(make_check("idempotent", max_abs(op * op - op), tol.idem));
      break;
    case OperatorKind::unitary:
      checks.push_back(make_check("unitary", max_abs(op.adjoint() * op - Matrix::Identity(n, n)), tol.unit));
      break;
  }
  return verdict;
}

Verdict validate_state(const Vector& amplitudes, const Tolerances& tol) {
  Verdict verdict{OperatorKind::state, {}};
  if (amplitudes.size() == 0) {
    verdict.checks.push_back(InvariantCheck{"non_empty", std::numeric_limits<double>::infinity(), 0.0, false});
    return verdict;
  }
  if (!all_finite(amplitudes)) {
    verdict.checks.push_back(InvariantCheck{"finite", std::numeric_limits<double>::infinity(), 0.0, false});
    return verdict;
  }
  verdict.checks.push_back(make_check("unit_norm", std::abs(amplitudes.norm() - 1.0), tol.norm));
  return verdict;
}

ValidationError::ValidationError(Verdict verdict) : ValidationError("operator", std::move(verdict)) {}

ValidationError::ValidationError(std::string context, Verdict verdict)
    : Error(context + " failed validation as " + verdict.summary()), verdict_(std::move(verdict)) {}

// ---------------------------------------------------------------------------
// Operator types

ComplexOperator::ComplexOperator(Matrix m) : m_(std::move(m)) {
  if (m_.rows() == 0 || m_.rows() != m_.cols()) {
    Verdict v{OperatorKind::density, {InvariantCheck{"square", std::numeric_limits<double>::infinity(), 0.0, false}}};
    throw ValidationError("complex operator", std::move(v));
  }
  if (!all_finite(m_)) {
    Verdict v{OperatorKind::density, {InvariantCheck{"finite", std::numeric_limits<double>::infinity(), 0.0, false}}};
    throw ValidationError("complex operator", std::move(v));
  }
}

ComplexOperator ComplexOperator::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return ComplexOperator(Matrix::Identity(n, n));
}

ComplexOperator operator*(const ComplexOperator& lhs, const ComplexOperator& rhs) {
  if (lhs.dim() != rhs.dim()) {
    throw DimensionMismatch("operator product of dimensions " + std::to_string(lhs.dim()) + " and " +
                            std::to_string(rhs.dim()));
  }
  return ComplexOperator(lhs.matrix() * rhs.matrix());
}

StateVector::StateVector(Vector amplitudes, const Tolerances& tol) : v_(std::move(amplitudes)) {
  require(validate_state(v_, tol), "state vector");
}

StateVector StateVector::normalized(Vector amplitudes) {
  const double n = amplitudes.norm();
  if (!(n > 0.0) || !std::isfinite(n)) throw InvalidArgument("cannot normalize a zero or non-finite vector");
  return StateVector(amplitudes / n);
}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
  if (index >= dim) throw InvalidArgument("basis index " + std::to_string(index) + " out of range");
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return StateVector(std::move(v));
}

DensityOperator::DensityOperator(Matrix m, const Tolerances& tol) : op_(std::move(m)) {
  require(validate(op_.matrix(), OperatorKind::density, tol), "density operator");
}

DensityOperator DensityOperator::pure(const StateVector& psi) { return DensityOperator(psi.outer()); }

DensityOperator DensityOperator::maximally_mixed(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return DensityOperator(Matrix::Identity(n, n) / static_cast<double>(dim));
}

double DensityOperator::purity() const { return (matrix() * matrix()).trace().real(); }

Projector::Projector(Matrix m, const Tolerances& tol) : op_(std::move(m)) {
  require(validate(op_.matrix(), OperatorKind::projector, tol), "projector");
  rank_ = static_cast<std::size_t>(std::llround(op_.trace().real()));
}

Projector Projector::onto(const StateVector& psi) { return Projector(psi.outer()); }

Projector Projector::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return Projector(Matrix::Identity(n, n));
}

Projector Projector::onto_columns(const Matrix& orthonormal_columns) {
  return Projector(orthonormal_columns * orthonormal_columns.adjoint());
}

bool Projector::is_identity(double tol) const {
  const auto n = static_cast<Eigen::Index>(dim());
  return max_abs(matrix() - Matrix::Identity(n, n)) <= tol;
}

UnitaryOperator::UnitaryOperator(Matrix m, const Tolerances& tol) : op_(std::move(m)) {
  require(validate(op_.matrix(), OperatorKind::unitary, tol), "unitary operator");
}

UnitaryOperator UnitaryOperator::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return UnitaryOperator(Matrix::Identity(n, n));
}

UnitaryOperator UnitaryOperator::adjoint() const { return UnitaryOperator(matrix().adjoint()); }

UnitaryOperator operator*(const UnitaryOperator& lhs, const UnitaryOperator& rhs) {
  if (lhs.dim() != rhs.dim()) {
    throw DimensionMismatch("unitary product of dimensions " + std::to_string(lhs.dim()) + " and " +
                            std::to_string(rhs.dim()));
  }
  return UnitaryOperator(lhs.matrix() * rhs.matrix());
}

// ---------------------------------------------------------------------------
// Tensor structure

SubsystemLayout::SubsystemLayout(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
  if (dims_.empty()) throw InvalidArgument("subsystem layout needs at least one subsystem");
  for (auto d : dims_) {
    if (d == 0) throw InvalidArgument("subsystem dimensions must be positive");
    total_ *= d;
  }
}

Matrix kron(const Matrix& lhs, const Matrix& rhs) {
  Matrix out(lhs.rows() * rhs.rows(), lhs.cols() * rhs.cols());
  for (Eigen::Index i = 0; i < lhs.rows(); ++i) {
    for (Eigen::Index j = 0; j < lhs.cols(); ++j) {
      out.block(i * rhs.rows(), j * rhs.cols(), rhs.rows(), rhs.cols()) = lhs(i, j) * rhs;
    }
  }
  return out;
}

ComplexOperator tensor(std::span<const ComplexOperator> factors) {
  if (factors.empty()) throw InvalidArgument("tensor product needs at least one factor");
  Matrix acc = factors.front().matrix();
  for (const auto& f : factors.subspan(1)) acc = kron(acc, f.matrix());
  return ComplexOperator(std::move(acc));
}

StateVector tensor(std::span<const StateVector> factors) {
  if (factors.empty()) throw InvalidArgument("tensor product needs at least one factor");
  Matrix acc = factors.front().amplitudes();
  for (const auto& f : factors.subspan(1)) acc = kron(acc, f.amplitudes());
  return StateVector(Vector(acc.col(0)));
}

ComplexOperator partial_trace(const ComplexOperator& op, const SubsystemLayout& layout,
                              std::span<const std::size_t> keep) {
  if (op.dim() != layout.total()) {
    throw DimensionMismatch("partial trace: operator dimension " + std::to_string(op.dim()) +
                            " does not match layout total " + std::to_string(layout.total()));
  }
  if (keep.empty()) throw InvalidArgument("partial trace: keep set must be non-empty");

  const std::size_t n = layout.size();
  std::vector<bool> kept(n, false);
  for (auto s : keep) {
    if (s >= n) throw InvalidArgument("partial trace: subsystem index " + std::to_string(s) + " out of range");
    kept[s] = true;
  }

  // Row-major strides of the full index, subsystem 0 slowest.
  std::vector<std::size_t> stride(n, 1);
  for (std::size_t s = n - 1; s > 0; --s) stride[s - 1] = stride[s] * layout.dim(s);

  std::vector<std::size_t> kept_dims, traced_dims, kept_stride, traced_stride;
  for (std::size_t s = 0; s < n; ++s) {
    (kept[s] ? kept_dims : traced_dims).push_back(layout.dim(s));
    (kept[s] ? kept_stride : traced_stride).push_back(stride[s]);
  }

  // Offset into the full index contributed by a flat sub-index over `dims`.
  auto offsets = [](const std::vector<std::size_t>& dims, const std::vector<std::size_t>& strides) {
    const std::size_t count =
        std::accumulate(dims.begin(), dims.end(), std::size_t{1}, std::multiplies<>());
    std::vector<std::size_t> out(count, 0);
    for (std::size_t flat = 0; flat < count; ++flat) {
      std::size_t rem = flat, off = 0;
      for (std::size_t k = dims.size(); k-- > 0;) {
        off += (rem % dims[k]) * strides[k];
        rem /= dims[k];
      }
      out[flat] = off;
    }
    return out;
  };

  const auto kept_off = offsets(kept_dims, kept_stride);
  const auto traced_off = offsets(traced_dims, traced_stride);
  const auto kd = static_cast<Eigen::Index>(kept_off.size());

  const Matrix& m = op.matrix();
  Matrix out = Matrix::Zero(kd, kd);
  for (Eigen::Index r = 0; r < kd; ++r) {
    for (Eigen::Index c = 0; c < kd; ++c) {
      Complex acc{0.0, 0.0};
      for (auto t : traced_off) {
        acc += m(static_cast<Eigen::Index>(kept_off[r] + t), static_cast<Eigen::Index>(kept_off[c] + t));
      }
      out(r, c) = acc;
    }
  }
  return ComplexOperator(std::move(out));
}

// ---------------------------------------------------------------------------
// Spectral analysis

std::vector<SpectralComponent> spectral_decompose(const DensityOperator& rho, double tol_degen) {
  const Matrix h = 0.5 * (rho.matrix() + rho.matrix().adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> solver(h);
  const auto& values = solver.eigenvalues();  // ascending
  const auto& vectors = solver.eigenvectors();

  std::vector<SpectralComponent> out;
  Eigen::Index hi = values.size() - 1;
  while (hi >= 0) {
    const double head = values(hi);
    Eigen::Index lo = hi;
    while (lo - 1 >= 0 && head - values(lo - 1) <= tol_degen) --lo;

    const Eigen::Index count = hi - lo + 1;
    const double weight = values.segment(lo, count).mean();
    if (weight > tol_degen) {
      const Matrix cols = vectors.middleCols(lo, count);
      out.push_back(SpectralComponent{weight, Projector::onto_columns(cols)});
    }
    hi = lo - 1;
  }
  return out;
}

}  // namespace twobc

#include "twobc/boundary.hpp"

#include <array>
#include <cmath>

namespace twobc {

namespace {

void require_same_dim(std::size_t lhs, std::size_t rhs, const char* what) {
  if (lhs != rhs) {
    throw DimensionMismatch(std::string(what) + ": dimensions " + std::to_string(lhs) + " and " +
                            std::to_string(rhs) + " differ");
  }
}

double identity_residual(const Projector& p) {
  const auto n = static_cast<Eigen::Index>(p.dim());
  return max_abs(p.matrix() - Matrix::Identity(n, n));
}

}  // namespace

Matrix evolve(const Matrix& op, const UnitaryOperator& u, Direction direction) {
  require_same_dim(static_cast<std::size_t>(op.rows()), u.dim(), "evolve");
  const Matrix& m = u.matrix();
  return direction == Direction::forward ? Matrix(m * op * m.adjoint()) : Matrix(m.adjoint() * op * m);
}

DensityOperator evolve(const DensityOperator& rho, const UnitaryOperator& u, Direction direction) {
  return DensityOperator(evolve(rho.matrix(), u, direction));
}

Conditioned lueders(const DensityOperator& rho, const Projector& p, const Tolerances& tol) {
  require_same_dim(rho.dim(), p.dim(), "lueders");
  const double weight = (rho.matrix() * p.matrix()).trace().real();
  if (weight <= tol.norm) {
    throw ImpossibleBoundary("boundary projector has vanishing weight Tr(rho P) = " + std::to_string(weight));
  }
  Matrix projected = p.matrix() * rho.matrix() * p.matrix() / weight;
  return Conditioned{DensityOperator(std::move(projected)), weight};
}

BoundaryPair::BoundaryPair(DensityOperator rho_i, DensityOperator rho_f, Projector p_a, Projector p_b,
                           UnitaryOperator u_if)
    : rho_i_(std::move(rho_i)),
      rho_f_(std::move(rho_f)),
      p_a_(std::move(p_a)),
      p_b_(std::move(p_b)),
      u_if_(std::move(u_if)) {
  const std::size_t d = rho_i_.dim();
  require_same_dim(d, rho_f_.dim(), "boundary pair rho_f");
  require_same_dim(d, p_a_.dim(), "boundary pair P_a");
  require_same_dim(d, p_b_.dim(), "boundary pair P_b");
  require_same_dim(d, u_if_.dim(), "boundary pair U");
}

RoundTrip roundtrip_consistent(const BoundaryPair& pair, const Tolerances& tol) {
  const UnitaryOperator& u = pair.u_if();
  const Matrix& rho_i = pair.rho_i().matrix();
  const Matrix& rho_f = pair.rho_f().matrix();
  const Matrix& p_a = pair.p_a().matrix();
  const Matrix& p_b = pair.p_b().matrix();

  RoundTrip rt;
  rt.a = (evolve(rho_f, u, Direction::backward) * p_a).trace().real();
  rt.b = (evolve(rho_i, u, Direction::forward) * p_b).trace().real();
  if (rt.a <= tol.norm || rt.b <= tol.norm) {
    throw ImpossibleBoundary("boundary pair has A = " + std::to_string(rt.a) + ", B = " + std::to_string(rt.b));
  }
  const double ab = rt.a * rt.b;

  // Equalities for rho_i are evaluated at t_i, those for rho_f at t_f.
  const Matrix p_b_at_i = evolve(p_b, u, Direction::backward);
  const Matrix p_a_at_f = evolve(p_a, u, Direction::forward);

  const Matrix sandwich_i = p_b_at_i * rho_i * p_b_at_i;
  const Matrix sandwich_f = p_a_at_f * rho_f * p_a_at_f;
  rt.initial_residual = max_abs(rho_i - p_a * sandwich_i * p_a / ab);
  rt.final_residual = max_abs(rho_f - p_b * sandwich_f * p_b / ab);

  const Complex n_i = (sandwich_i * p_a).trace();
  const Complex n_f = (sandwich_f * p_b).trace();
  rt.normalization_residual = std::max(std::abs(n_i - ab), std::abs(n_f - ab));

  rt.consistent = rt.initial_residual <= tol.recon && rt.final_residual <= tol.recon &&
                  rt.normalization_residual <= tol.recon;
  return rt;
}

bool support_condition(const DensityOperator& rho, const Projector& p, const Tolerances& tol) {
  require_same_dim(rho.dim(), p.dim(), "support condition");
  return max_abs(rho.matrix() - p.matrix() * rho.matrix() * p.matrix()) <= tol.recon;
}

std::string_view to_string(Branch branch) {
  switch (branch) {
    case Branch::sqm: return "sqm";
    case Branch::pure: return "pure";
    case Branch::inconsistent: return "inconsistent";
  }
  return "unknown";
}

BoundaryVerdict classify_boundary_solution(const BoundaryPair& pair, const Tolerances& tol) {
  BoundaryVerdict verdict;
  auto& diag = verdict.diagnostics;
  diag.roundtrip = roundtrip_consistent(pair, tol);
  verdict.a = diag.roundtrip.a;
  verdict.b = diag.roundtrip.b;

  const Matrix& rho_i = pair.rho_i().matrix();
  const Matrix& rho_f = pair.rho_f().matrix();
  const Matrix& p_a = pair.p_a().matrix();
  const Matrix& p_b = pair.p_b().matrix();

  diag.evolution_residual = max_abs(evolve(rho_i, pair.u_if(), Direction::forward) - rho_f);
  diag.p_a_identity_residual = identity_residual(pair.p_a());
  diag.p_b_identity_residual = identity_residual(pair.p_b());
  diag.rho_i_vs_p_a = max_abs(rho_i - p_a);
  diag.rho_f_vs_p_b = max_abs(rho_f - p_b);
  diag.initial_support_residual = max_abs(rho_i - p_a * rho_i * p_a);
  diag.final_support_residual = max_abs(rho_f - p_b * rho_f * p_b);

  const bool sqm = diag.evolution_residual <= tol.recon && diag.p_a_identity_residual <= tol.recon &&
                   diag.p_b_identity_residual <= tol.recon;
  const bool pure = pair.p_a().rank() == 1 && pair.p_b().rank() == 1 && diag.rho_i_vs_p_a <= tol.recon &&
                    diag.rho_f_vs_p_b <= tol.recon && diag.roundtrip.consistent;

  if (sqm) {
    verdict.branch = Branch::sqm;
  } else if (pure) {
    verdict.branch = Branch::pure;
  } else {
    verdict.branch = Branch::inconsistent;
  }
  return verdict;
}

BoundaryPair construct_consistent_pair(const StateVector& a, const Projector& p_b, const UnitaryOperator& u,
                                       const Tolerances& tol) {
  require_same_dim(a.dim(), p_b.dim(), "construct_consistent_pair P_b");
  require_same_dim(a.dim(), u.dim(), "construct_consistent_pair U");
  if (p_b.rank() != 1) {
    throw InvalidArgument("final boundary projector must be rank 1, got rank " + std::to_string(p_b.rank()));
  }
  const Vector evolved = u.matrix() * a.amplitudes();
  const double overlap = evolved.dot(p_b.matrix() * evolved).real();
  if (overlap <= tol.norm) {
    throw ImpossibleBoundary("final boundary is unreachable: Tr(U|a><a|U^dagger P_b) = " + std::to_string(overlap));
  }
  auto rho_i = DensityOperator::pure(a);
  auto p_a = Projector::onto(a);
  auto rho_f = DensityOperator(p_b.matrix());
  return BoundaryPair(std::move(rho_i), std::move(rho_f), std::move(p_a), p_b, u);
}

bool product_pure_check(const DensityOperator& rho, const SubsystemLayout& layout, const Tolerances& tol) {
  require_same_dim(rho.dim(), layout.total(), "product purity check");
  if (std::abs(rho.purity() - 1.0) > tol.recon) return false;
  for (std::size_t s = 0; s < layout.size(); ++s) {
    const std::array<std::size_t, 1> keep{s};
    const Matrix reduced = partial_trace(rho.op(), layout, keep).matrix();
    const double purity = (reduced * reduced).trace().real();
    if (std::abs(purity - 1.0) > tol.recon) return false;
  }
  return true;
}

}  // namespace twobc

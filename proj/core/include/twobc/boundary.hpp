#pragma once

// Consistency of an initial and a final boundary condition.
//
// A pair (rho_i at t_i, rho_f at t_f) is consistent when each state is the
// Lueders-style projection of the other evolved to its time:
//
//   rho_f = B^-1 P_b rho_i(t_f) P_b,   B = Tr(rho_i(t_f) P_b)
//   rho_i = A^-1 P_a rho_f(t_i) P_a,   A = Tr(rho_f(t_i) P_a)
//
// and the forward-then-backward round trip returns the starting state. The
// only solutions are the trivial one (rho_f = rho_i evolved, P_a = P_b = I)
// and pure rays rho_i = P_a = |a><a|, rho_f = P_b = |b><b|.

#include <string_view>

#include "twobc/hilbert.hpp"

namespace twobc {

enum class Direction { forward, backward };

/// forward: U rho U^dagger;  backward: U^dagger rho U.
DensityOperator evolve(const DensityOperator& rho, const UnitaryOperator& u, Direction direction);
Matrix evolve(const Matrix& op, const UnitaryOperator& u, Direction direction);

struct Conditioned {
  DensityOperator projected;
  double weight;
};

/// (P rho P / Tr(rho P), Tr(rho P)). Throws ImpossibleBoundary when the weight
/// does not exceed tol.norm.
Conditioned lueders(const DensityOperator& rho, const Projector& p, const Tolerances& tol = kDefaultTolerances);

/// Boundary data: states and projectors at their own times plus the composed
/// evolution U(t_f, t_i).
class BoundaryPair {
 public:
  /// Throws DimensionMismatch unless all operators share one dimension.
  BoundaryPair(DensityOperator rho_i, DensityOperator rho_f, Projector p_a, Projector p_b, UnitaryOperator u_if);

  const DensityOperator& rho_i() const noexcept { return rho_i_; }
  const DensityOperator& rho_f() const noexcept { return rho_f_; }
  const Projector& p_a() const noexcept { return p_a_; }
  const Projector& p_b() const noexcept { return p_b_; }
  const UnitaryOperator& u_if() const noexcept { return u_if_; }
  std::size_t dim() const noexcept { return rho_i_.dim(); }

 private:
  DensityOperator rho_i_;
  DensityOperator rho_f_;
  Projector p_a_;
  Projector p_b_;
  UnitaryOperator u_if_;
};

struct RoundTrip {
  bool consistent = false;
  double a = 0.0;  ///< Tr(rho_f(t_i) P_a)
  double b = 0.0;  ///< Tr(rho_i(t_f) P_b)
  double initial_residual = 0.0;
  double final_residual = 0.0;
  /// Largest deviation among AB = Tr(P_b rho_i P_b P_a) = Tr(P_a rho_f P_a P_b).
  double normalization_residual = 0.0;
};

/// Evaluates both round-trip equalities with every operator evolved to the
/// time of the state being reproduced. Throws ImpossibleBoundary if A or B vanishes.
RoundTrip roundtrip_consistent(const BoundaryPair& pair, const Tolerances& tol = kDefaultTolerances);

/// rho == P rho P within tol.recon.
bool support_condition(const DensityOperator& rho, const Projector& p, const Tolerances& tol = kDefaultTolerances);

enum class Branch { sqm, pure, inconsistent };

std::string_view to_string(Branch branch);

struct BoundaryDiagnostics {
  double evolution_residual = 0.0;  ///< |U rho_i U^dagger - rho_f|
  double p_a_identity_residual = 0.0;
  double p_b_identity_residual = 0.0;
  double rho_i_vs_p_a = 0.0;  ///< |rho_i - P_a|
  double rho_f_vs_p_b = 0.0;
  double initial_support_residual = 0.0;  ///< |rho_i - P_a rho_i P_a|
  double final_support_residual = 0.0;
  RoundTrip roundtrip;
};

struct BoundaryVerdict {
  Branch branch = Branch::inconsistent;
  double a = 0.0;
  double b = 0.0;
  BoundaryDiagnostics diagnostics;
};

BoundaryVerdict classify_boundary_solution(const BoundaryPair& pair, const Tolerances& tol = kDefaultTolerances);

/// Builds the pure solution rho_i = P_a = |a><a|, rho_f = P_b for a rank-1 P_b.
/// Throws InvalidArgument if P_b is not rank 1, ImpossibleBoundary if
/// Tr(U|a><a|U^dagger P_b) does not exceed tol.norm.
BoundaryPair construct_consistent_pair(const StateVector& a, const Projector& p_b, const UnitaryOperator& u,
                                       const Tolerances& tol = kDefaultTolerances);

/// True iff rho is pure and every single-subsystem reduction is pure, i.e.
/// rho is a tensor product of rank-1 projectors.
bool product_pure_check(const DensityOperator& rho, const SubsystemLayout& layout,
                        const Tolerances& tol = kDefaultTolerances);

}  // namespace twobc

#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace twobc {
namespace {

using testing::diag;
using testing::identity;
using testing::ket;
using testing::plus;

constexpr double kPi = std::numbers::pi;

TEST(Evolve, IdentityLeavesStateUnchanged) {
  Rng rng(1);
  const auto rho = random_density(3, rng);
  const auto out = evolve(rho, UnitaryOperator::identity(3), Direction::forward);
  EXPECT_LE(max_abs(out.matrix() - rho.matrix()), 0.0);
}

TEST(Evolve, ForwardThenBackwardRoundTrips) {
  Rng rng(2);
  for (int i = 0; i < 10; ++i) {
    const auto rho = random_density(4, rng);
    const auto u = random_unitary(4, rng);
    const auto back = evolve(evolve(rho, u, Direction::forward), u, Direction::backward);
    EXPECT_LE(max_abs(back.matrix() - rho.matrix()), kDefaultTolerances.recon);
  }
}

TEST(Evolve, BeamSplitterPopulations) {
  // |a> -> cos(alpha)|d> + i sin(alpha)|c>, d = mode 0, c = mode 1.
  for (double alpha : {0.1, 0.7, 1.2}) {
    const auto out = evolve(DensityOperator::pure(StateVector::basis(2, 0)), beam_splitter(alpha), Direction::forward);
    EXPECT_NEAR(out.matrix()(0, 0).real(), std::cos(alpha) * std::cos(alpha), 1e-14);
    EXPECT_NEAR(out.matrix()(1, 1).real(), std::sin(alpha) * std::sin(alpha), 1e-14);
  }
}

TEST(Evolve, DimensionMismatchThrows) {
  EXPECT_THROW(evolve(DensityOperator::maximally_mixed(2), UnitaryOperator::identity(3), Direction::forward),
               DimensionMismatch);
}

TEST(Lueders, MaximallyMixedOntoZero) {
  const auto [projected, weight] = lueders(DensityOperator::maximally_mixed(2), Projector::onto(StateVector::basis(2, 0)));
  EXPECT_NEAR(weight, 0.5, 1e-14);
  EXPECT_LE(max_abs(projected.matrix() - diag({1.0, 0.0})), 1e-14);
}

TEST(Lueders, PlusOntoZero) {
  const auto [projected, weight] = lueders(DensityOperator::pure(plus()), Projector::onto(StateVector::basis(2, 0)));
  EXPECT_NEAR(weight, 0.5, 1e-14);
  EXPECT_LE(max_abs(projected.matrix() - diag({1.0, 0.0})), 1e-14);
}

TEST(Lueders, OrthogonalProjectorIsImpossible) {
  EXPECT_THROW(lueders(DensityOperator::pure(StateVector::basis(2, 0)), Projector::onto(StateVector::basis(2, 1))),
               ImpossibleBoundary);
}

TEST(Lueders, ReprojectionIsAFixedPoint) {
  Rng rng(4);
  for (int i = 0; i < 20; ++i) {
    const auto rho = random_density(4, rng);
    const auto u = random_unitary(4, rng);
    Matrix cols = u.matrix().leftCols(2);
    const auto p = Projector::onto_columns(cols);
    const auto once = lueders(rho, p);
    const auto twice = lueders(once.projected, p);
    EXPECT_NEAR(twice.weight, 1.0, 1e-12);
    EXPECT_LE(max_abs(twice.projected.matrix() - once.projected.matrix()), kDefaultTolerances.recon);
    EXPECT_LE(max_abs(p.matrix() * once.projected.matrix() * p.matrix() - once.projected.matrix()), 1e-12);
  }
}

TEST(RoundTrip, ConstructedPureIsConsistent) {
  Rng rng(5);
  const auto a = random_state(3, rng);
  const auto pb = Projector::onto(random_state(3, rng));
  const auto pair = construct_consistent_pair(a, pb, random_unitary(3, rng));
  EXPECT_TRUE(roundtrip_consistent(pair).consistent);
}

TEST(RoundTrip, MaximallyMixedWithIdentityProjectorsIsConsistent) {
  const BoundaryPair pair(DensityOperator::maximally_mixed(2), DensityOperator::maximally_mixed(2),
                          Projector::identity(2), Projector::identity(2), UnitaryOperator::identity(2));
  const auto rt = roundtrip_consistent(pair);
  EXPECT_TRUE(rt.consistent);
  EXPECT_NEAR(rt.a, 1.0, 1e-14);
  EXPECT_NEAR(rt.b, 1.0, 1e-14);
}

TEST(RoundTrip, MixedStateWithRankOneProjectorFails) {
  const Matrix rho = diag({0.7, 0.3});
  const Matrix pa = diag({1.0, 0.0});
  const BoundaryPair pair{DensityOperator(rho), DensityOperator(rho), Projector(pa), Projector::identity(2),
                          UnitaryOperator::identity(2)};
  // Dense evaluation: A = Tr(rho_f P_a) = 0.7, B = 1, (AB)^-1 P_a rho_i P_a = |0><0| != rho_i.
  const double a = (rho * pa).trace().real();
  const Matrix reproduced = pa * rho * pa / a;
  ASSERT_GT(max_abs(reproduced - rho), 0.1);

  const auto rt = roundtrip_consistent(pair);
  EXPECT_FALSE(rt.consistent);
  EXPECT_NEAR(rt.a, 0.7, 1e-14);
  EXPECT_NEAR(rt.b, 1.0, 1e-14);
  EXPECT_NEAR(rt.initial_residual, max_abs(reproduced - rho), 1e-14);
}

TEST(RoundTrip, VanishingOverlapIsImpossible) {
  const BoundaryPair pair(DensityOperator::pure(StateVector::basis(2, 0)), DensityOperator::pure(StateVector::basis(2, 1)),
                          Projector::onto(StateVector::basis(2, 0)), Projector::onto(StateVector::basis(2, 1)),
                          UnitaryOperator::identity(2));
  EXPECT_THROW(roundtrip_consistent(pair), ImpossibleBoundary);
  EXPECT_THROW(classify_boundary_solution(pair), ImpossibleBoundary);
}

TEST(BoundaryPair, RejectsMixedDimensions) {
  EXPECT_THROW(BoundaryPair(DensityOperator::maximally_mixed(2), DensityOperator::maximally_mixed(3),
                            Projector::identity(2), Projector::identity(2), UnitaryOperator::identity(2)),
               DimensionMismatch);
}

TEST(SupportCondition, Examples) {
  const auto zero = StateVector::basis(2, 0);
  EXPECT_TRUE(support_condition(DensityOperator::pure(zero), Projector::onto(zero)));
  EXPECT_TRUE(support_condition(DensityOperator::maximally_mixed(2), Projector::identity(2)));
  EXPECT_FALSE(support_condition(DensityOperator::pure(plus()), Projector::onto(zero)));
}

TEST(Classify, PureRaysArePureBranch) {
  const auto a = ket({1.0, 0.5});
  const auto b = ket({0.3, 1.0});
  const auto u = beam_splitter(0.4);
  const BoundaryPair pair(DensityOperator::pure(a), DensityOperator::pure(b), Projector::onto(a), Projector::onto(b), u);
  const auto v = classify_boundary_solution(pair);
  EXPECT_EQ(v.branch, Branch::pure);
  EXPECT_NEAR(v.a, v.b, 1e-14);
  EXPECT_GE(v.a, 0.0);
  EXPECT_LE(v.a, 1.0);
}

TEST(Classify, MaximallyMixedIdentityIsSqmBranch) {
  const BoundaryPair pair(DensityOperator::maximally_mixed(2), DensityOperator::maximally_mixed(2),
                          Projector::identity(2), Projector::identity(2), UnitaryOperator::identity(2));
  EXPECT_EQ(classify_boundary_solution(pair).branch, Branch::sqm);
}

TEST(Classify, MixedWithRankOneProjectorIsInconsistent) {
  Rng rng(8);
  const auto rho_i = random_density(2, rng);
  const auto rho_f = random_density(2, rng);
  const auto pa = Projector::onto(random_state(2, rng));
  const BoundaryPair pair(rho_i, rho_f, pa, Projector::identity(2), random_unitary(2, rng));
  // Direct check: a mixed rho_i cannot satisfy rho_i = P_a rho_i P_a with rank-1 P_a.
  const Matrix& r = rho_i.matrix();
  ASSERT_GT(max_abs(r - pa.matrix() * r * pa.matrix()), 1e-3);
  const auto v = classify_boundary_solution(pair);
  EXPECT_EQ(v.branch, Branch::inconsistent);
  EXPECT_GT(v.diagnostics.initial_support_residual, 1e-3);
}

TEST(Construct, TrivialPair) {
  const auto zero = StateVector::basis(2, 0);
  const auto pair = construct_consistent_pair(zero, Projector::onto(zero), UnitaryOperator::identity(2));
  const auto rt = roundtrip_consistent(pair);
  EXPECT_TRUE(rt.consistent);
  EXPECT_NEAR(rt.a, 1.0, 1e-14);
  EXPECT_NEAR(rt.b, 1.0, 1e-14);
}

TEST(Construct, MziPairIsConsistentAwayFromQuarterTurn) {
  const double theta = 0.4, phi = 0.9;
  const auto u = beam_splitter(phi) * beam_splitter(theta);
  const auto pair = construct_consistent_pair(StateVector::basis(2, mzi::kModeA),
                                              Projector::onto(StateVector::basis(2, mzi::kModeE)), u);
  const auto rt = roundtrip_consistent(pair);
  EXPECT_TRUE(rt.consistent);
  // Hand expansion: <e|U|a> = cos(theta)cos(phi) + (i sin theta)(i sin phi) = cos(theta + phi).
  const double expected = std::cos(theta + phi) * std::cos(theta + phi);
  EXPECT_NEAR(rt.b, expected, 1e-14);
  EXPECT_NEAR(rt.a, expected, 1e-14);
  EXPECT_EQ(classify_boundary_solution(pair).branch, Branch::pure);
}

TEST(Construct, QuarterTurnIsImpossible) {
  const double theta = kPi / 3, phi = kPi / 6;
  ASSERT_LT(std::abs(std::cos(theta + phi)), 1e-15);
  const auto u = beam_splitter(phi) * beam_splitter(theta);
  EXPECT_THROW(construct_consistent_pair(StateVector::basis(2, mzi::kModeA),
                                         Projector::onto(StateVector::basis(2, mzi::kModeE)), u),
               ImpossibleBoundary);
}

TEST(Construct, RejectsHigherRankFinalProjector) {
  EXPECT_THROW(construct_consistent_pair(StateVector::basis(2, 0), Projector::identity(2), UnitaryOperator::identity(2)),
               InvalidArgument);
}

TEST(Construct, MutualProjectionHoldsForPureBranch) {
  Rng rng(10);
  for (int i = 0; i < 50; ++i) {
    const std::size_t dim = 2 + static_cast<std::size_t>(i % 3);
    const auto pair = construct_consistent_pair(random_state(dim, rng), Projector::onto(random_state(dim, rng)),
                                                random_unitary(dim, rng));
    ASSERT_EQ(classify_boundary_solution(pair).branch, Branch::pure);
    const auto forward = lueders(evolve(pair.rho_i(), pair.u_if(), Direction::forward), pair.p_b());
    const auto backward = lueders(evolve(pair.rho_f(), pair.u_if(), Direction::backward), pair.p_a());
    EXPECT_LE(max_abs(forward.projected.matrix() - pair.rho_f().matrix()), kDefaultTolerances.recon);
    EXPECT_LE(max_abs(backward.projected.matrix() - pair.rho_i().matrix()), kDefaultTolerances.recon);
  }
}

TEST(Dichotomy, ConsistentNonIdentityPairsArePure) {
  // Random boundaries: whenever the round trip holds with non-identity
  // projectors, the states must be the rank-1 projectors themselves.
  Rng rng(12);
  int consistent = 0;
  for (int trial = 0; trial < 500; ++trial) {
    const std::size_t dim = 2 + static_cast<std::size_t>(trial % 3);
    const auto u = random_unitary(dim, rng);
    const auto pa = Projector::onto(random_state(dim, rng));
    const auto pb = Projector::onto(random_state(dim, rng));
    // Mix of random mixed states, random pure states, and the projectors themselves.
    auto pick = [&](const Projector& p) {
      switch (trial % 3) {
        case 0: return random_density(dim, rng);
        case 1: return DensityOperator::pure(random_state(dim, rng));
        default: return DensityOperator(p.matrix());
      }
    };
    const BoundaryPair pair(pick(pa), pick(pb), pa, pb, u);
    const auto rt = roundtrip_consistent(pair);
    if (!rt.consistent) continue;
    ++consistent;
    EXPECT_LE(max_abs(pair.rho_i().matrix() - pa.matrix()), kDefaultTolerances.recon);
    EXPECT_LE(max_abs(pair.rho_f().matrix() - pb.matrix()), kDefaultTolerances.recon);
  }
  EXPECT_GT(consistent, 100);
}

TEST(ProductPure, Examples) {
  const std::array<StateVector, 2> parts{StateVector::basis(2, 0), plus()};
  const SubsystemLayout layout({2, 2});
  EXPECT_TRUE(product_pure_check(DensityOperator::pure(tensor(parts)), layout));
  EXPECT_FALSE(product_pure_check(DensityOperator::pure(ket({1.0, 0.0, 0.0, 1.0})), layout));
  EXPECT_FALSE(product_pure_check(DensityOperator::maximally_mixed(4), layout));
  EXPECT_THROW(product_pure_check(DensityOperator::maximally_mixed(3), layout), DimensionMismatch);
}

}  // namespace
}  // namespace twobc

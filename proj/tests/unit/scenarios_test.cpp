#include <cmath>
#include <numbers>
#include <vector>

#include <gtest/gtest.h>

#include "test_support.hpp"

namespace twobc {
namespace {

constexpr double kPi = std::numbers::pi;

TEST(BeamSplitter, SpecialAngles) {
  EXPECT_LE(max_abs(beam_splitter(0.0).matrix() - testing::identity(2)), 0.0);

  Matrix swap_i(2, 2);
  swap_i << 0.0, Complex{0.0, 1.0}, Complex{0.0, 1.0}, 0.0;
  EXPECT_LE(max_abs(beam_splitter(kPi / 2).matrix() - swap_i), 1e-15);

  const Matrix half = beam_splitter(kPi / 4).matrix();
  for (Eigen::Index i = 0; i < 2; ++i)
    for (Eigen::Index j = 0; j < 2; ++j) EXPECT_NEAR(std::norm(half(i, j)), 0.5, 1e-15);
}

TEST(BeamSplitter, NegativeAngleIsAdjoint) {
  for (double a : {0.1, 0.7, 2.3}) {
    EXPECT_LE(max_abs(beam_splitter(-a).matrix() - beam_splitter(a).adjoint().matrix()), 1e-15);
    EXPECT_TRUE(validate(beam_splitter(a).matrix(), OperatorKind::unitary).passed());
  }
}

TEST(Mzi, EighthTurn) {
  // sin^2(pi/8) = (1 - cos(pi/4)) / 2
  const auto r = mzi_distribution(kPi / 8, kPi / 8);
  EXPECT_NEAR(r.prob_c, (1.0 - std::sqrt(0.5)) / 2.0, 1e-12);
  EXPECT_NEAR(r.prob_d, (1.0 + std::sqrt(0.5)) / 2.0, 1e-12);
  EXPECT_THROW(mzi_distribution(kPi / 4, kPi / 4), ImpossibleBoundary);
}

TEST(Mzi, SixthTurn) {
  const auto r = mzi_distribution(kPi / 6, kPi / 6);
  EXPECT_NEAR(r.prob_c, 0.25, 1e-12);
  EXPECT_NEAR(r.prob_d, 0.75, 1e-12);
}

TEST(Mzi, UnreachableFinalRayIsImpossible) {
  EXPECT_THROW(mzi_distribution(kPi / 3, kPi / 6), ImpossibleBoundary);
  EXPECT_THROW(mzi_distribution(0.0, kPi / 2), ImpossibleBoundary);
}

TEST(Mzi, AnglesOutOfRangeAreRejected) {
  EXPECT_THROW(mzi_distribution(-0.1, 0.2), InvalidArgument);
  EXPECT_THROW(mzi_distribution(0.2, 1.7), InvalidArgument);
  EXPECT_THROW(mzi_distribution(std::nan(""), 0.2), InvalidArgument);
}

TEST(Mzi, GridMatchesClosedForm) {
  const int n = 50;
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const double theta = (kPi / 2) * i / (n - 1);
      const double phi = (kPi / 2) * j / (n - 1);
      if (std::abs(theta + phi - kPi / 2) < 1e-3) continue;
      const auto r = mzi_distribution(theta, phi);
      const double denom = std::cos(theta - phi);
      EXPECT_NEAR(r.prob_c, std::sin(theta) * std::sin(phi) / denom, 1e-12) << theta << ' ' << phi;
      EXPECT_NEAR(r.prob_d, std::cos(theta) * std::cos(phi) / denom, 1e-12) << theta << ' ' << phi;
      EXPECT_NEAR(r.prob_c + r.prob_d, 1.0, 1e-12);
    }
  }
}

TEST(Mzi, WhichPathReference) {
  const auto [c, d] = sqm_reference(kPi / 6);
  EXPECT_NEAR(c, 0.25, 1e-15);
  EXPECT_NEAR(d, 0.75, 1e-15);
}

std::vector<double> outcome_marginals(const MeasurementModel& model) {
  const auto basis = ProductBasis::computational(model.layout());
  const Vector amps = basis.amplitudes(model.final_state);
  std::vector<double> out(model.mu.size(), 0.0);
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    const auto labels = basis.unflatten(static_cast<std::size_t>(i));
    out[model.outcome_of(labels[1])] += std::norm(amps(i));
  }
  return out;
}

TEST(MeasurementModel, SingleOutcomeSupport) {
  const std::vector<Complex> mu{1.0, 0.0};
  const auto model = build_measurement_model(mu, {}, 3u);
  const auto marg = outcome_marginals(model);
  EXPECT_NEAR(marg[0], 1.0, 1e-12);
  EXPECT_NEAR(marg[1], 0.0, 1e-15);
}

TEST(MeasurementModel, StatesAreNormalizedAndBlocksDisjoint) {
  Rng rng(10);
  for (std::size_t k : {2u, 3u, 4u}) {
    std::vector<Complex> mu;
    for (std::size_t i = 0; i < k; ++i) mu.push_back(1.0 / std::sqrt(static_cast<double>(k)));
    const auto model = build_measurement_model(mu, InstrumentDims{4, 5, 3}, rng);
    EXPECT_NEAR(model.final_state.amplitudes().norm(), 1.0, 1e-12);
    EXPECT_NEAR(model.post_measurement.amplitudes().norm(), 1.0, 1e-12);
    std::vector<int> owner(5, -1);
    for (std::size_t i = 0; i < k; ++i) {
      EXPECT_FALSE(model.blocks[i].empty());
      for (auto b : model.blocks[i]) {
        EXPECT_EQ(owner[b], -1);
        owner[b] = static_cast<int>(i);
      }
      // d_i lives on its own block.
      for (Eigen::Index col = 0; col < model.d.cols(); ++col) {
        if (owner[static_cast<std::size_t>(col)] != static_cast<int>(i)) {
          EXPECT_EQ(model.d(static_cast<Eigen::Index>(i), col), Complex(0.0));
        }
      }
      EXPECT_NEAR(model.c.row(static_cast<Eigen::Index>(i)).norm(), 1.0, 1e-12);
      EXPECT_NEAR(model.d.row(static_cast<Eigen::Index>(i)).norm(), 1.0, 1e-12);
      EXPECT_NEAR(model.e.row(static_cast<Eigen::Index>(i)).norm(), 1.0, 1e-12);
    }
  }
}

TEST(MeasurementModel, OutcomeMarginalsEqualSquaredAmplitudes) {
  Rng rng(12);
  for (int trial = 0; trial < 20; ++trial) {
    const auto v = random_state(3, rng).amplitudes();
    const std::vector<Complex> mu(v.data(), v.data() + v.size());
    const auto model = build_measurement_model(mu, InstrumentDims{3, 6, 2}, rng);
    const auto marg = outcome_marginals(model);
    for (std::size_t i = 0; i < mu.size(); ++i) EXPECT_NEAR(marg[i], std::norm(mu[i]), 1e-12);
  }
}

TEST(MeasurementModel, InvalidInputs) {
  const std::vector<Complex> unnormalized{1.0, 1.0};
  EXPECT_THROW(build_measurement_model(unnormalized, {}, 1u), InvalidArgument);
  const std::vector<Complex> three{0.6, 0.0, 0.8};
  EXPECT_THROW(build_measurement_model(three, InstrumentDims{2, 4, 4}, 1u), InvalidArgument);
  EXPECT_THROW(build_measurement_model(three, InstrumentDims{3, 2, 4}, 1u), InvalidArgument);
  EXPECT_THROW(build_measurement_model(std::vector<Complex>{}, {}, 1u), InvalidArgument);
}

TEST(GleasonSample, BasisStateIsDeterministic) {
  const SubsystemLayout layout({2, 3});
  const auto basis = ProductBasis::computational(layout);
  Rng rng(1);
  const auto psi = StateVector::basis(6, 4);
  for (int i = 0; i < 100; ++i) EXPECT_EQ(gleason_sample(psi, basis, rng), (std::vector<std::size_t>{1, 1}));
}

TEST(GleasonSample, EqualSuperposition) {
  const auto basis = ProductBasis::computational(SubsystemLayout({2}));
  Rng rng(2);
  const int n = 200000;
  int zeros = 0;
  for (int i = 0; i < n; ++i) zeros += gleason_sample(testing::plus(), basis, rng)[0] == 0;
  EXPECT_NEAR(static_cast<double>(zeros) / n, 0.5, 0.005);
}

TEST(GleasonSample, FrequenciesTrackBornWeightsInRotatedBasis) {
  Rng rng(3);
  const SubsystemLayout layout({2, 3});
  const ProductBasis basis(layout, {random_unitary(2, rng), random_unitary(3, rng)});
  const auto psi = random_state(6, rng);
  const Vector amps = basis.amplitudes(psi);
  const int n = 100000;
  std::vector<int> counts(6, 0);
  for (int i = 0; i < n; ++i) {
    const auto l = gleason_sample(psi, basis, rng);
    ++counts[l[0] * 3 + l[1]];
  }
  for (Eigen::Index i = 0; i < 6; ++i) {
    const double p = std::norm(amps(i));
    const double f = static_cast<double>(counts[static_cast<std::size_t>(i)]) / n;
    EXPECT_LE(std::abs(f - p), 5.0 * std::sqrt(p * (1 - p) / n) + 1e-12);
  }
}

TEST(BornRecovery, CertainOutcome) {
  const std::vector<Complex> mu{1.0, 0.0};
  const auto r = born_recovery_experiment(mu, 1000, 4);
  EXPECT_EQ(r.counts[0], 1000u);
  EXPECT_EQ(r.counts[1], 0u);
}

TEST(BornRecovery, EqualAmplitudes) {
  const std::vector<Complex> mu{std::sqrt(0.5), std::sqrt(0.5)};
  const auto r = born_recovery_experiment(mu, 20000, 5);
  EXPECT_LE(std::abs(r.frequencies[0] - 0.5), 4.0 * std::sqrt(0.25 / 20000));
}

TEST(BornRecovery, UnequalAmplitudes) {
  const std::vector<Complex> mu{std::sqrt(0.3), std::sqrt(0.7)};
  const auto r = born_recovery_experiment(mu, 100000, 6);
  EXPECT_NEAR(r.frequencies[0], 0.3, 0.005);
  EXPECT_NEAR(r.expected[0], 0.3, 1e-15);
}

TEST(BornRecovery, ErrorShrinksWithRuns) {
  const std::vector<Complex> mu{std::sqrt(0.3), std::sqrt(0.7)};
  for (std::size_t runs : {1000u, 4000u, 16000u}) {
    const auto r = born_recovery_experiment(mu, runs, 7);
    EXPECT_LE(std::abs(r.frequencies[0] - 0.3), 3.0 * std::sqrt(0.21 / static_cast<double>(runs)));
  }
}

TEST(BornRecovery, DeterministicForSeed) {
  const std::vector<Complex> mu{0.6, Complex{0.0, 0.8}};
  const auto a = born_recovery_experiment(mu, 500, 99);
  const auto b = born_recovery_experiment(mu, 500, 99);
  EXPECT_EQ(a.counts, b.counts);
  EXPECT_THROW(born_recovery_experiment(mu, 0, 99), InvalidArgument);
}

}  // namespace
}  // namespace twobc

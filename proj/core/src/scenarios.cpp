#include "twobc/scenarios.hpp"

#include <cmath>
#include <numbers>
#include <numeric>

namespace twobc {

UnitaryOperator beam_splitter(double angle) {
  const double c = std::cos(angle);
  const double s = std::sin(angle);
  Matrix m(2, 2);
  m << Complex{c, 0.0}, Complex{0.0, s},
       Complex{0.0, s}, Complex{c, 0.0};
  return UnitaryOperator(std::move(m));
}

// ---------------------------------------------------------------------------
// MZI

MziSetup mzi_setup(double theta, double phi) {
  using namespace mzi;
  auto rank1 = [](std::size_t mode) { return Projector::onto(StateVector::basis(2, mode)); };

  std::vector<HistorySlot> slots;
  slots.emplace_back(0, std::vector<Projector>{rank1(kModeA), rank1(kModeB)});
  slots.emplace_back(1, std::vector<Projector>{rank1(kModeC), rank1(kModeD)});
  slots.emplace_back(2, std::vector<Projector>{rank1(kModeE), rank1(kModeF)});

  // Second splitter: input d = mode 0 -> cos(phi) e + i sin(phi) f,
  // input c = mode 1 -> i sin(phi) e + cos(phi) f, with e = 0, f = 1.
  std::vector<UnitaryOperator> intervals{beam_splitter(theta), beam_splitter(phi)};

  return MziSetup{std::move(slots), std::move(intervals),
                  DensityOperator::pure(StateVector::basis(2, kModeA)),
                  DensityOperator::pure(StateVector::basis(2, kModeE))};
}

MziResult mzi_distribution(double theta, double phi, const Tolerances& tol) {
  constexpr double half_pi = std::numbers::pi / 2.0;
  constexpr double slack = 1e-12;
  if (!(theta >= -slack && theta <= half_pi + slack && phi >= -slack && phi <= half_pi + slack)) {
    throw InvalidArgument("MZI angles must lie in [0, pi/2]");
  }
  if (std::abs(theta + phi - half_pi) <= tol.norm) {
    throw ImpossibleBoundary("final boundary |e> is unreachable: theta + phi = pi/2");
  }

  auto setup = mzi_setup(theta, phi);
  const UnitaryOperator total = setup.intervals[1] * setup.intervals[0];
  // Throws ImpossibleBoundary when cos^2(theta + phi) is numerically zero.
  construct_consistent_pair(StateVector::basis(2, mzi::kModeA), Projector(setup.rho_m.matrix()), total, tol);

  MziResult result{history_distribution(setup.rho_p, setup.slots, setup.intervals, setup.rho_m), 0.0, 0.0, 0.0, 0.0};
  using mzi::kLabelA, mzi::kLabelC, mzi::kLabelD, mzi::kLabelE;
  result.prob_c = result.distribution.probability(HistorySequence{{kLabelA, kLabelC, kLabelE}});
  result.prob_d = result.distribution.probability(HistorySequence{{kLabelA, kLabelD, kLabelE}});

  const double denom = std::cos(theta - phi);
  result.closed_form_c = std::sin(theta) * std::sin(phi) / denom;
  result.closed_form_d = std::cos(theta) * std::cos(phi) / denom;
  return result;
}

std::pair<double, double> sqm_reference(double theta) {
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  return {s * s, c * c};
}

// ---------------------------------------------------------------------------
// Measurement model

std::size_t MeasurementModel::outcome_of(std::size_t m_label) const {
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (auto b : blocks[i]) {
      if (b == m_label) return i;
    }
  }
  throw InvalidArgument("m-subsystem label " + std::to_string(m_label) + " belongs to no outcome block");
}

namespace {

Vector random_unit(std::size_t dim, Rng& rng) { return random_state(dim, rng).amplitudes(); }

Vector basis_vector(std::size_t dim, std::size_t index) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
  v(static_cast<Eigen::Index>(index)) = 1.0;
  return v;
}

}  // namespace

MeasurementModel build_measurement_model(std::span<const Complex> mu, const InstrumentDims& dims, Rng& rng,
                                         const Tolerances& tol) {
  const std::size_t k = mu.size();
  if (k == 0) throw InvalidArgument("measurement model needs at least one outcome amplitude");
  double norm2 = 0.0;
  for (const auto& z : mu) norm2 += std::norm(z);
  if (std::abs(norm2 - 1.0) > tol.norm) {
    throw InvalidArgument("outcome amplitudes must satisfy sum |mu_i|^2 = 1, got " + std::to_string(norm2));
  }
  if (dims.system < k) throw InvalidArgument("system dimension is smaller than the number of outcomes");
  if (dims.m < k) {
    throw InvalidArgument("m-subsystem dimension " + std::to_string(dims.m) + " cannot host " + std::to_string(k) +
                          " disjoint outcome blocks");
  }
  if (dims.n == 0) throw InvalidArgument("n-subsystem dimension must be positive");

  std::vector<std::vector<std::size_t>> blocks(k);
  for (std::size_t i = 0; i < k; ++i) {
    for (std::size_t b = i * dims.m / k; b < (i + 1) * dims.m / k; ++b) blocks[i].push_back(b);
  }

  const auto ki = static_cast<Eigen::Index>(k);
  Matrix c(ki, static_cast<Eigen::Index>(dims.system));
  Matrix d = Matrix::Zero(ki, static_cast<Eigen::Index>(dims.m));
  Matrix e(ki, static_cast<Eigen::Index>(dims.n));

  const std::size_t total = dims.system * dims.m * dims.n;
  Vector post = Vector::Zero(static_cast<Eigen::Index>(total));
  Vector final_state = Vector::Zero(static_cast<Eigen::Index>(total));

  for (std::size_t i = 0; i < k; ++i) {
    const auto row = static_cast<Eigen::Index>(i);
    const Vector ci = random_unit(dims.system, rng);
    const Vector block_amps = random_unit(blocks[i].size(), rng);
    Vector di = Vector::Zero(static_cast<Eigen::Index>(dims.m));
    for (std::size_t j = 0; j < blocks[i].size(); ++j) {
      di(static_cast<Eigen::Index>(blocks[i][j])) = block_amps(static_cast<Eigen::Index>(j));
    }
    const Vector ei = random_unit(dims.n, rng);
    c.row(row) = ci.transpose();
    d.row(row) = di.transpose();
    e.row(row) = ei.transpose();

    final_state += mu[i] * Vector(kron(kron(ci, di), ei).col(0));
    post += mu[i] * Vector(kron(kron(basis_vector(dims.system, i), basis_vector(dims.m, blocks[i].front())),
                                basis_vector(dims.n, i % dims.n))
                               .col(0));
  }

  return MeasurementModel{std::vector<Complex>(mu.begin(), mu.end()),
                          dims,
                          std::move(blocks),
                          std::move(c),
                          std::move(d),
                          std::move(e),
                          StateVector(std::move(post), tol),
                          StateVector(std::move(final_state), tol)};
}

MeasurementModel build_measurement_model(std::span<const Complex> mu, const InstrumentDims& dims,
                                         std::uint64_t seed, const Tolerances& tol) {
  Rng rng(seed);
  return build_measurement_model(mu, dims, rng, tol);
}

ProductBasis::ProductBasis(SubsystemLayout layout, std::vector<UnitaryOperator> bases)
    : layout_(std::move(layout)), bases_(std::move(bases)) {
  if (bases_.size() != layout_.size()) {
    throw InvalidArgument("product basis needs one basis per subsystem");
  }
  Matrix full = Matrix::Identity(1, 1);
  computational_ = true;
  for (std::size_t s = 0; s < bases_.size(); ++s) {
    if (bases_[s].dim() != layout_.dim(s)) throw DimensionMismatch("basis dimension does not match subsystem");
    const auto n = static_cast<Eigen::Index>(layout_.dim(s));
    computational_ = computational_ && max_abs(bases_[s].matrix() - Matrix::Identity(n, n)) == 0.0;
    full = kron(full, bases_[s].matrix());
  }
  adjoint_ = full.adjoint();
}

ProductBasis ProductBasis::computational(SubsystemLayout layout) {
  std::vector<UnitaryOperator> bases;
  for (auto d : layout.dims()) bases.push_back(UnitaryOperator::identity(d));
  return ProductBasis(std::move(layout), std::move(bases));
}

Vector ProductBasis::amplitudes(const StateVector& psi) const {
  if (psi.dim() != layout_.total()) throw DimensionMismatch("state dimension does not match product basis");
  if (computational_) return psi.amplitudes();
  return adjoint_ * psi.amplitudes();
}

std::vector<std::size_t> ProductBasis::unflatten(std::size_t flat) const {
  std::vector<std::size_t> labels(layout_.size());
  for (std::size_t s = layout_.size(); s-- > 0;) {
    labels[s] = flat % layout_.dim(s);
    flat /= layout_.dim(s);
  }
  return labels;
}

std::vector<std::size_t> gleason_sample(const StateVector& psi, const ProductBasis& basis, Rng& rng) {
  const Vector amps = basis.amplitudes(psi);
  double total = 0.0;
  for (const auto& z : amps) total += std::norm(z);

  const double target = rng.uniform() * total;
  double acc = 0.0;
  std::size_t chosen = 0;
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    const double p = std::norm(amps(i));
    if (p <= 0.0) continue;
    // Falls back to the last label with nonzero weight if rounding leaves target >= acc.
    chosen = static_cast<std::size_t>(i);
    acc += p;
    if (target < acc) break;
  }
  return basis.unflatten(chosen);
}

BornResult born_recovery_experiment(std::span<const Complex> mu, std::size_t runs, std::uint64_t seed,
                                    const InstrumentDims& dims) {
  if (runs == 0) throw InvalidArgument("born recovery needs at least one run");
  const std::size_t k = mu.size();
  const ProductBasis basis = ProductBasis::computational(SubsystemLayout({dims.system, dims.m, dims.n}));

  BornResult result;
  result.runs = runs;
  result.counts.assign(k, 0);
  for (std::size_t r = 0; r < runs; ++r) {
    Rng rng(derive_seed(seed, r));
    const MeasurementModel model = build_measurement_model(mu, dims, rng);
    const auto labels = gleason_sample(model.final_state, basis, rng);
    ++result.counts[model.outcome_of(labels[1])];
  }

  const double n = static_cast<double>(runs);
  for (std::size_t j = 0; j < k; ++j) {
    const double f = static_cast<double>(result.counts[j]) / n;
    result.frequencies.push_back(f);
    result.expected.push_back(std::norm(mu[j]));
    result.std_errors.push_back(std::sqrt(f * (1.0 - f) / n));
  }
  return result;
}

}  // namespace twobc

#pragma once

// Concrete two-boundary models: beam splitters, the Mach-Zehnder
// interferometer, and the measurement model with outcome sampling.

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "twobc/boundary.hpp"
#include "twobc/histories.hpp"
#include "twobc/hilbert.hpp"
#include "twobc/random.hpp"

namespace twobc {

// ---------------------------------------------------------------------------
// Beam splitters and the MZI

/// [[cos a, i sin a], [i sin a, cos a]]: the input in column 0 maps to
/// cos a |out0> + i sin a |out1>.
UnitaryOperator beam_splitter(double angle);

/// Mode labels of the three MZI slots. Everything lives in one two-mode
/// space; the labels name which mode index a property refers to at each time.
namespace mzi {
inline constexpr std::size_t kModeA = 0, kModeB = 1;  // preparation slot, modes a, b
inline constexpr std::size_t kModeD = 0, kModeC = 1;  // between the splitters
inline constexpr std::size_t kModeE = 0, kModeF = 1;  // final slot

// Slot labels used in HistorySequence (label 0 first).
inline constexpr std::size_t kLabelA = 0, kLabelB = 1;
inline constexpr std::size_t kLabelC = 0, kLabelD = 1;
inline constexpr std::size_t kLabelE = 0, kLabelF = 1;
}  // namespace mzi

struct MziSetup {
  std::vector<HistorySlot> slots;           ///< {a, b}, {c, d}, {e, f}
  std::vector<UnitaryOperator> intervals;   ///< BS(theta), BS(phi)
  DensityOperator rho_p;                    ///< |a><a|
  DensityOperator rho_m;                    ///< |e><e|
};

/// The three-slot interferometer history. First splitter
/// |a> -> cos(theta)|d> + i sin(theta)|c>; second splitter
/// |c> -> cos(phi)|f> + i sin(phi)|e>, |d> -> i sin(phi)|f> + cos(phi)|e>.
MziSetup mzi_setup(double theta, double phi);

struct MziResult {
  HistoryDistribution distribution;
  double prob_c = 0.0;
  double prob_d = 0.0;
  double closed_form_c = 0.0;  ///< sin(theta) sin(phi) / cos(theta - phi)
  double closed_form_d = 0.0;  ///< cos(theta) cos(phi) / cos(theta - phi)
};

/// Requires 0 <= theta, phi <= pi/2 (InvalidArgument otherwise). Throws
/// ImpossibleBoundary when the final ray |e> is unreachable from |a>
/// (theta + phi = pi/2).
MziResult mzi_distribution(double theta, double phi, const Tolerances& tol = kDefaultTolerances);

/// Which-path measurement probabilities (sin^2 theta, cos^2 theta).
std::pair<double, double> sqm_reference(double theta);

// ---------------------------------------------------------------------------
// Measurement model

struct InstrumentDims {
  std::size_t system = 2;
  std::size_t m = 4;  ///< instrument part that never superposes its outcome states
  std::size_t n = 4;  ///< instrument part that does

  friend bool operator==(const InstrumentDims&, const InstrumentDims&) = default;
};

struct MeasurementModel {
  std::vector<Complex> mu;
  InstrumentDims dims;
  /// Disjoint m-subsystem index sets, one per outcome.
  std::vector<std::vector<std::size_t>> blocks;
  Matrix c;  ///< k x system final-stage coefficients
  Matrix d;  ///< k x m, row i supported on blocks[i]
  Matrix e;  ///< k x n
  StateVector post_measurement;  ///< sum_i mu_i |q_i>|m_i>|n_i>
  StateVector final_state;       ///< sum_i mu_i (c_i) (d_i) (e_i)

  SubsystemLayout layout() const { return SubsystemLayout({dims.system, dims.m, dims.n}); }
  /// Outcome whose block contains m-subsystem label `m_label`.
  std::size_t outcome_of(std::size_t m_label) const;
};

/// Throws InvalidArgument if sum |mu_i|^2 != 1 within tol.norm, if the system
/// has fewer than k levels, or if the m-subsystem cannot host k disjoint blocks.
MeasurementModel build_measurement_model(std::span<const Complex> mu, const InstrumentDims& dims, Rng& rng,
                                         const Tolerances& tol = kDefaultTolerances);
MeasurementModel build_measurement_model(std::span<const Complex> mu, const InstrumentDims& dims,
                                         std::uint64_t seed, const Tolerances& tol = kDefaultTolerances);

/// Orthonormal basis per subsystem (columns of each unitary).
class ProductBasis {
 public:
  ProductBasis(SubsystemLayout layout, std::vector<UnitaryOperator> bases);
  static ProductBasis computational(SubsystemLayout layout);

  const SubsystemLayout& layout() const noexcept { return layout_; }
  /// <b'|psi> for every product label b', flat index with subsystem 0 slowest.
  Vector amplitudes(const StateVector& psi) const;
  std::vector<std::size_t> unflatten(std::size_t flat) const;

 private:
  SubsystemLayout layout_;
  std::vector<UnitaryOperator> bases_;
  Matrix adjoint_;  ///< (B_0 (x) ... (x) B_{n-1})^dagger
  bool computational_ = false;
};

/// Draws one product-basis label with probability |<b'|psi>|^2.
std::vector<std::size_t> gleason_sample(const StateVector& psi, const ProductBasis& basis, Rng& rng);

struct BornResult {
  std::size_t runs = 0;
  std::vector<std::size_t> counts;
  std::vector<double> frequencies;
  std::vector<double> expected;    ///< |mu_j|^2
  std::vector<double> std_errors;  ///< sqrt(f (1 - f) / runs)
};

/// Each run builds a fresh measurement model from the sub-seed
/// derive_seed(seed, run), samples the final product label with the same
/// generator, and reads the outcome off the block holding the m label.
BornResult born_recovery_experiment(std::span<const Complex> mu, std::size_t runs, std::uint64_t seed,
                                    const InstrumentDims& dims = {});

}  // namespace twobc

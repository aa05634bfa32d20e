#pragma once

/// @file
/// Inertial reference vectors, the weight matrix A = Σ ρ_i r_i r_iᵀ, virtual
/// sampling timers and the body-frame measurement model b_i = Rᵀ r_i + n.

#include <cstddef>
#include <random>
#include <vector>

#include "hyatt/so3.h"

namespace hyatt {

using Rng = std::mt19937_64;

/// Inertial vectors r_i with their positive weights ρ_i.
struct VectorObservationSet {
  std::vector<Vector3> vectors;
  std::vector<double> weights;

  std::size_t size() const { return vectors.size(); }

  /// Throws AssumptionViolation unless N >= 2, sizes agree, every weight is
  /// positive and at least one pair of vectors is non-collinear.
  void validate() const;
};

/// Symmetric eigen-analysis of the weight matrix, eigenvalues ascending.
struct WeightMatrixAnalysis {
  Matrix3 a;
  Vector3 eigenvalues;
  /// Column k is the unit eigenvector for eigenvalues(k).
  Matrix3 eigenvectors;
  bool positive_definite = false;
  /// λ1 = λ2 within the relative gap tolerance.
  bool lower_pair_repeated = false;
  /// λ2 = λ3 within the relative gap tolerance.
  bool upper_pair_repeated = false;

  bool distinct() const { return !lower_pair_repeated && !upper_pair_repeated; }
  Vector3 eigenvector(int k) const { return eigenvectors.col(k); }
};

/// Relative eigenvalue gap below which two eigenvalues count as repeated.
inline constexpr double kEigenGapTolerance = 1e-8;

/// Σ ρ_i r_i r_iᵀ without validation.
Matrix3 weight_matrix_of(const VectorObservationSet& set);

/// Builds and analyses A. Throws AssumptionViolation when rank(A) < 2.
WeightMatrixAnalysis weight_matrix(const VectorObservationSet& set);

/// Appends r_first × r_second with weight @p weight. Throws AssumptionViolation
/// if the chosen pair is collinear or an index is out of range.
VectorObservationSet augment_cross_product(const VectorObservationSet& set,
                                           std::size_t first, std::size_t second,
                                           double weight);

/// Admissible inter-sample interval [T_m, T_M] of one vector.
struct SamplingWindow {
  double min_period = 0.0;
  double max_period = 0.0;
};

using SamplingSchedule = std::vector<SamplingWindow>;

/// Throws ConfigError unless 0 < T_m <= T_M < inf for every entry.
void validate_schedule(const SamplingSchedule& schedule);

/// Remaining time τ_i until the next sample of each vector.
struct TimerBank {
  std::vector<double> remaining;
};

struct TimerAdvance {
  TimerBank bank;
  /// Indices whose timer reached zero during the step, ascending.
  std::vector<std::size_t> fired;
};

/// A timer counts as expired once it is within this margin of zero; absorbs the
/// round-off of repeatedly subtracting dt.
inline constexpr double kTimerEpsilon = 1e-12;

/// Flows every timer by τ̇ = −1 over @p dt. Expired timers are clamped to zero
/// and reported; the caller resets them with reset_timer().
TimerAdvance advance_timers(TimerBank bank, double dt);

/// Uniform draw on [T_m^i, T_M^i].
double reset_timer(std::size_t i, const SamplingSchedule& schedule, Rng& rng);

/// τ_i(0) drawn uniformly on [0, T_M^i].
TimerBank initial_timers(const SamplingSchedule& schedule, Rng& rng);

/// How the scalar noise level σ maps to Cov(n_b).
enum class NoiseConvention {
  kStd,  ///< σ is the per-axis standard deviation, Cov = σ² I.
  kCov,  ///< σ is the covariance scale, Cov = σ I.
};

struct NoiseModel {
  double sigma = 0.0;
  NoiseConvention convention = NoiseConvention::kStd;

  double stddev() const;
};

/// b = Rᵀ r + n with n ~ N(0, Cov) per @p noise. No renormalisation.
Vector3 measure(const RotationMatrix& r, const Vector3& inertial,
                const NoiseModel& noise, Rng& rng);

}  // namespace hyatt

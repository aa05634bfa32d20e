#pragma once

/// @file
/// Simulation harness: truth kinematics, the hybrid-time event loop that
/// interleaves observer flows with measurement and θ jumps, and the recorded
/// run with its per-jump audit trail.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "hyatt/config.h"
#include "hyatt/gain_design.h"
#include "hyatt/lyapunov.h"
#include "hyatt/so3.h"

namespace hyatt {

/// ω(t) = ω_o [sin(0.1t), sin(0.1t + π/3), cos(0.5t)]ᵀ.
Vector3 truth_omega(double t, double omega_amplitude);

/// One recorded sample, taken after all jumps of its integration step.
struct RunRow {
  double t = 0.0;
  long jump_count = 0;
  double attitude_error_deg = 0.0;
  /// ‖r̃‖ of the stacked vector errors (NaN for the complementary filter).
  double vector_error_norm = 0.0;
  double theta = 0.0;
  /// NaN unless the GAS observer runs.
  double mu_phi = 0.0;
  double lyapunov_VR = 0.0;
  /// ‖σ_R‖ at the recorded state.
  double innovation_norm = 0.0;
  /// V_r^i per vector (NaN for the complementary filter).
  std::vector<double> lyapunov_vr;
  /// Jumps applied in this step, e.g. "m1;m3;th" (measurement 1, 3, θ jump).
  std::string events;
};

/// Everything checked around a single jump.
struct JumpAudit {
  enum class Kind { kMeasurement, kTheta };
  Kind kind = Kind::kMeasurement;
  double t = 0.0;
  /// Jump counter before the jump.
  long jump_count = 0;
  /// Measured vector (measurement jumps only).
  std::size_t index = 0;
  /// R̂⁺ == R̂ bitwise.
  bool attitude_continuous = true;

  // Measurement jumps: vector error and V_r^i before/after.
  double vector_error_sq_before = 0.0;
  double vector_error_sq_after = 0.0;
  double vr_before = 0.0;
  double vr_after = 0.0;
  double tau_after = 0.0;

  // θ jumps.
  double theta_before = 0.0;
  double theta_after = 0.0;
  double mu_phi_before = 0.0;
  double mu_phi_after = 0.0;
  double VR_before = 0.0;
  double VR_after = 0.0;
  /// Σ ρ_i ‖r̃_i‖² at the jump.
  double weighted_vector_error_sq = 0.0;
};

struct RunRecord {
  std::string scenario;
  ObserverKind observer = ObserverKind::kAgas;
  std::uint64_t seed = 0;
  std::size_t vector_count = 0;
  LyapunovMonitor monitor;
  /// Designed or configured set (GAS runs only).
  std::optional<ParameterSetA> parameters;
  Matrix3 weight_matrix = Matrix3::Zero();
  /// ‖r̃_i(0)‖² per vector (empty for the complementary filter).
  std::vector<double> initial_vector_error_sq;
  std::vector<RunRow> rows;
  std::vector<JumpAudit> jumps;
};

/// Runs @p config deterministically. Throws ConfigError on invalid
/// configurations and ContractViolation if a hybrid precondition breaks.
RunRecord run_scenario(const ScenarioConfig& config);

/// Weight set actually used by a run (including any cross-product vector).
VectorObservationSet effective_vectors(const ScenarioConfig& config);

/// Parameter set a GAS run of @p config would use.
ParameterSetA scenario_parameters(const ScenarioConfig& config);

/// Mean attitude error over rows with t >= @p t_start. Throws
/// std::invalid_argument when no row qualifies.
double averaged_error(const RunRecord& record, double t_start = 2.0);

}  // namespace hyatt

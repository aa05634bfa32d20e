#pragma once

/// @file
/// Lyapunov quantities evaluated from simulation truth. They are used as
/// runtime probes of the estimator guarantees, never as estimator inputs.

#include <optional>
#include <vector>

#include "hyatt/gain_design.h"
#include "hyatt/sensing.h"
#include "hyatt/so3.h"

namespace hyatt {

/// Constants of the exponential envelope of the vector estimation errors.
struct LyapunovMonitor {
  double mu = 0.0;
  double lambda_jump = 0.0;  ///< λ_J = e^{μ T̄_M} (1 − k_r)²
  double alpha = 0.0;        ///< e^{μ T̄_M}
  double lambda = 0.0;       ///< min{−ln λ_J, μ}
  double max_period = 0.0;   ///< T̄_M = max_i T_M^i

  /// α e^{−λ t}.
  double envelope(double t) const;
};

/// Supremum of admissible rates: −(2/T̄_M) ln(1 − k_r).
double monitor_rate_supremum(double k_r, double max_period);

/// Builds the monitor for gain @p k_r and the largest sampling period of
/// @p schedule. @p mu defaults to half the supremum. Throws
/// std::invalid_argument when μ is outside (0, supremum).
LyapunovMonitor make_monitor(double k_r, const SamplingSchedule& schedule,
                             std::optional<double> mu = std::nullopt);

/// r̃_i = r_i − R R̂ᵀ r̂_i.
Vector3 vector_error(const RotationMatrix& truth, const RotationMatrix& r_hat,
                     const Vector3& estimate, const Vector3& inertial);

/// V_r^i = e^{μ τ_i} r̃_iᵀ r̃_i.
double lyapunov_vr_i(const Vector3& vector_error, double tau,
                     const LyapunovMonitor& monitor);

/// V_R = tr((I − R̃ R_u(θ)) A) + (γ/2) θ², with R_u(θ) about @p u.
double lyapunov_VR(const RotationMatrix& attitude_error, double theta,
                   const Matrix3& a, double gamma, const Vector3& u);

}  // namespace hyatt

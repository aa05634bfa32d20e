#pragma once

/// @file
/// Hybrid attitude observers driven by continuous gyro data and intermittent
/// vector measurements, plus the complementary filter with zero-order hold
/// used as a baseline.
///
/// Both hybrid observers carry, next to R̂, one auxiliary vector r̂_i per
/// inertial vector: an estimate of R̂ b_i that flows with the attitude
/// correction and is pulled toward R̂ b_i whenever a measurement of b_i
/// arrives. The globally stable variant additionally carries a scalar θ that
/// rotates the references by R_u(θ) and jumps to an argmin of the cost φ over
/// a finite set Θ when it is worth it by more than δ.

#include <cstddef>
#include <optional>
#include <vector>

#include "hyatt/gain_design.h"
#include "hyatt/sensing.h"
#include "hyatt/so3.h"

namespace hyatt {

struct ObserverGains {
  double k_o = 15.0;
  double k_r = 0.45;

  /// Throws std::invalid_argument unless k_o > 0 and 0 < k_r < 1.
  void validate() const;
};

struct AgasObserverState {
  RotationMatrix r_hat;
  std::vector<Vector3> vector_estimates;
};

struct GasObserverState {
  RotationMatrix r_hat;
  std::vector<Vector3> vector_estimates;
  double theta = 0.0;
};

/// σ_R = Σ ρ_i r̂_i × r_i.
Vector3 innovation_agas(const std::vector<Vector3>& vector_estimates,
                        const VectorObservationSet& set);
inline Vector3 innovation_agas(const AgasObserverState& state,
                               const VectorObservationSet& set) {
  return innovation_agas(state.vector_estimates, set);
}

/// One RK4 step of Ṙ̂ = R̂(ω + k_o R̂ᵀσ_R)^×, ṙ̂_i = k_o σ_R^× r̂_i with σ_R
/// re-evaluated at every stage and ω held over the step.
AgasObserverState agas_flow_step(const AgasObserverState& state,
                                 const Vector3& omega,
                                 const VectorObservationSet& set,
                                 const ObserverGains& gains, double dt);

/// r̂_i⁺ = r̂_i + k_r (R̂ b_i − r̂_i). Everything else is copied unchanged.
AgasObserverState agas_measurement_jump(const AgasObserverState& state,
                                        std::size_t index, const Vector3& body,
                                        const ObserverGains& gains);

/// R_u(θ) = exp(θ u^×).
RotationMatrix reference_rotation(double theta, const ParameterSetA& params);

/// σ_R = Σ ρ_i r̂_i × R_u(θ) r_i.
Vector3 innovation_gas(const std::vector<Vector3>& vector_estimates, double theta,
                       const VectorObservationSet& set,
                       const ParameterSetA& params);
inline Vector3 innovation_gas(const GasObserverState& state,
                              const VectorObservationSet& set,
                              const ParameterSetA& params) {
  return innovation_gas(state.vector_estimates, state.theta, set, params);
}

/// φ(θ, r̂) = ½ Σ ρ_i ‖r_i − R_u(θ)ᵀ r̂_i‖² + (γ/2) θ².
double phi(double theta, const std::vector<Vector3>& vector_estimates,
           const VectorObservationSet& set, const ParameterSetA& params);

/// Deterministic argmin of φ(·, r̂) over Θ: Θ is visited in canonical order
/// (ascending |θ'|, positive before negative) and the first exact minimum wins,
/// so the result does not depend on how Θ is stored.
double theta_argmin(const std::vector<Vector3>& vector_estimates,
                    const VectorObservationSet& set, const ParameterSetA& params);

/// μ_φ(θ, r̂) = φ(θ, r̂) − min_{θ' ∈ Θ} φ(θ', r̂).
double mu_phi(double theta, const std::vector<Vector3>& vector_estimates,
              const VectorObservationSet& set, const ParameterSetA& params);

/// True when the state is strictly inside the jump set (μ_φ > δ). At equality
/// the state flows.
bool in_theta_jump_set(const GasObserverState& state, const VectorObservationSet& set,
                       const ParameterSetA& params);

/// One coupled RK4 step over (R̂, r̂, θ). Throws ContractViolation if the
/// state is outside the flow set (μ_φ > δ).
GasObserverState gas_flow_step(const GasObserverState& state, const Vector3& omega,
                               const VectorObservationSet& set,
                               const ObserverGains& gains,
                               const ParameterSetA& params, double dt);

/// Measurement jump of the GAS observer; identical update law to the AGAS one.
GasObserverState gas_measurement_jump(const GasObserverState& state,
                                      std::size_t index, const Vector3& body,
                                      const ObserverGains& gains);

/// θ⁺ = theta_argmin(r̂). Throws ContractViolation unless μ_φ >= δ.
GasObserverState gas_theta_jump(const GasObserverState& state,
                                const VectorObservationSet& set,
                                const ParameterSetA& params);

struct ComplementaryGains {
  double k_p = 12.0;
  /// One positive gain k_i per vector.
  std::vector<double> k_i;
};

/// Last received body measurement of each vector; empty until the first one.
using HeldMeasurements = std::vector<std::optional<Vector3>>;

/// σ_R = Σ k_i R̂ b_i^m × r_i over the vectors that have been received.
Vector3 innovation_cf(const Matrix3& r_hat, const HeldMeasurements& held,
                      const VectorObservationSet& set, const ComplementaryGains& gains);

/// One RK4 step of Ṙ̂ = R̂(ω + k_P R̂ᵀσ_R)^× with the measurements held.
RotationMatrix cf_zoh_step(const RotationMatrix& r_hat, const Vector3& omega,
                           const HeldMeasurements& held,
                           const VectorObservationSet& set,
                           const ComplementaryGains& gains, double dt);

}  // namespace hyatt

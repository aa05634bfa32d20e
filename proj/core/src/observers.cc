#include "hyatt/observers.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "hyatt/errors.h"

namespace hyatt {

namespace {

// Raw (unprojected) state used inside the Runge-Kutta stages.
struct FlowState {
  Matrix3 r_hat;
  std::vector<Vector3> v;
  double theta = 0.0;
};

FlowState axpy(const FlowState& x, double h, const FlowState& dx) {
  FlowState out{x.r_hat + h * dx.r_hat, x.v, x.theta + h * dx.theta};
  for (std::size_t i = 0; i < out.v.size(); ++i) out.v[i] += h * dx.v[i];
  return out;
}

FlowState rk4_combine(const FlowState& x, double dt, const FlowState& k1,
                      const FlowState& k2, const FlowState& k3, const FlowState& k4) {
  const double h = dt / 6.0;
  FlowState out{x.r_hat + h * (k1.r_hat + 2.0 * k2.r_hat + 2.0 * k3.r_hat + k4.r_hat),
                x.v,
                x.theta + h * (k1.theta + 2.0 * k2.theta + 2.0 * k3.theta + k4.theta)};
  for (std::size_t i = 0; i < out.v.size(); ++i) {
    out.v[i] += h * (k1.v[i] + 2.0 * k2.v[i] + 2.0 * k3.v[i] + k4.v[i]);
  }
  return out;
}

template <typename Derivative>
FlowState rk4(const FlowState& x, double dt, Derivative&& f) {
  const FlowState k1 = f(x);
  const FlowState k2 = f(axpy(x, 0.5 * dt, k1));
  const FlowState k3 = f(axpy(x, 0.5 * dt, k2));
  const FlowState k4 = f(axpy(x, dt, k3));
  return rk4_combine(x, dt, k1, k2, k3, k4);
}

// Shared attitude/vector flow: Ṙ̂ = R̂(ω + k R̂ᵀσ)^×, ṙ̂_i = k σ^× r̂_i.
FlowState attitude_flow(const FlowState& x, const Vector3& omega, const Vector3& sigma,
                        double gain) {
  FlowState d;
  d.r_hat = x.r_hat * skew(omega + gain * x.r_hat.transpose() * sigma);
  d.v.resize(x.v.size());
  const Matrix3 s = gain * skew(sigma);
  for (std::size_t i = 0; i < x.v.size(); ++i) d.v[i] = s * x.v[i];
  d.theta = 0.0;
  return d;
}

Vector3 measurement_update(const Vector3& estimate, const RotationMatrix& r_hat,
                           const Vector3& body, double k_r) {
  return estimate + k_r * (r_hat * body - estimate);
}

void check_index(std::size_t index, std::size_t n) {
  if (index >= n) {
    throw std::out_of_range("measurement index " + std::to_string(index) +
                            " out of range for " + std::to_string(n) + " vectors");
  }
}

// Θ in canonical order: ascending |θ'|, positive before negative.
std::vector<double> canonical_theta_order(std::vector<double> thetas) {
  std::sort(thetas.begin(), thetas.end(), [](double a, double b) {
    if (std::abs(a) != std::abs(b)) return std::abs(a) < std::abs(b);
    return a > b;
  });
  return thetas;
}

}  // namespace

void ObserverGains::validate() const {
  if (!(k_o > 0.0)) throw std::invalid_argument("observer gain k_o must be positive");
  if (!(k_r > 0.0 && k_r < 1.0)) {
    throw std::invalid_argument("observer gain k_r must lie in (0, 1)");
  }
}

Vector3 innovation_agas(const std::vector<Vector3>& vector_estimates,
                        const VectorObservationSet& set) {
  Vector3 sigma = Vector3::Zero();
  for (std::size_t i = 0; i < set.size(); ++i) {
    sigma += set.weights[i] * vector_estimates[i].cross(set.vectors[i]);
  }
  return sigma;
}

AgasObserverState agas_flow_step(const AgasObserverState& state,
                                 const Vector3& omega,
                                 const VectorObservationSet& set,
                                 const ObserverGains& gains, double dt) {
  const FlowState x{state.r_hat.matrix(), state.vector_estimates, 0.0};
  const FlowState next = rk4(x, dt, [&](const FlowState& s) {
    return attitude_flow(s, omega, innovation_agas(s.v, set), gains.k_o);
  });
  return {project_to_so3(next.r_hat), next.v};
}

AgasObserverState agas_measurement_jump(const AgasObserverState& state,
                                        std::size_t index, const Vector3& body,
                                        const ObserverGains& gains) {
  check_index(index, state.vector_estimates.size());
  AgasObserverState out = state;
  out.vector_estimates[index] =
      measurement_update(state.vector_estimates[index], state.r_hat, body, gains.k_r);
  return out;
}

RotationMatrix reference_rotation(double theta, const ParameterSetA& params) {
  return angle_axis(theta, params.u);
}

Vector3 innovation_gas(const std::vector<Vector3>& vector_estimates, double theta,
                       const VectorObservationSet& set,
                       const ParameterSetA& params) {
  const Matrix3 ru = reference_rotation(theta, params).matrix();
  Vector3 sigma = Vector3::Zero();
  for (std::size_t i = 0; i < set.size(); ++i) {
    sigma += set.weights[i] * vector_estimates[i].cross(ru * set.vectors[i]);
  }
  return sigma;
}

double phi(double theta, const std::vector<Vector3>& vector_estimates,
           const VectorObservationSet& set, const ParameterSetA& params) {
  const Matrix3 ru_t = reference_rotation(theta, params).matrix().transpose();
  double cost = 0.0;
  for (std::size_t i = 0; i < set.size(); ++i) {
    cost += set.weights[i] * (set.vectors[i] - ru_t * vector_estimates[i]).squaredNorm();
  }
  return 0.5 * cost + 0.5 * params.gamma * theta * theta;
}

double theta_argmin(const std::vector<Vector3>& vector_estimates,
                    const VectorObservationSet& set, const ParameterSetA& params) {
  if (params.theta_set.empty()) {
    throw std::invalid_argument("theta_argmin: Θ is empty");
  }
  double best_theta = 0.0;
  double best_cost = std::numeric_limits<double>::infinity();
  for (double candidate : canonical_theta_order(params.theta_set)) {
    const double cost = phi(candidate, vector_estimates, set, params);
    if (cost < best_cost) {
      best_cost = cost;
      best_theta = candidate;
    }
  }
  return best_theta;
}

double mu_phi(double theta, const std::vector<Vector3>& vector_estimates,
              const VectorObservationSet& set, const ParameterSetA& params) {
  const double best = theta_argmin(vector_estimates, set, params);
  return phi(theta, vector_estimates, set, params) -
         phi(best, vector_estimates, set, params);
}

bool in_theta_jump_set(const GasObserverState& state, const VectorObservationSet& set,
                       const ParameterSetA& params) {
  return mu_phi(state.theta, state.vector_estimates, set, params) > params.delta;
}

GasObserverState gas_flow_step(const GasObserverState& state, const Vector3& omega,
                               const VectorObservationSet& set,
                               const ObserverGains& gains,
                               const ParameterSetA& params, double dt) {
  const double mu = mu_phi(state.theta, state.vector_estimates, set, params);
  if (mu > params.delta) {
    throw ContractViolation("gas_flow_step: state is outside the flow set (μ_φ = " +
                            std::to_string(mu) + " > δ = " +
                            std::to_string(params.delta) + "); apply the θ jump first");
  }
  const FlowState x{state.r_hat.matrix(), state.vector_estimates, state.theta};
  const FlowState next = rk4(x, dt, [&](const FlowState& s) {
    const Matrix3 ru = reference_rotation(s.theta, params).matrix();
    const Vector3 sigma = innovation_gas(s.v, s.theta, set, params);
    FlowState d = attitude_flow(s, omega, sigma, gains.k_o);
    d.theta = -params.k_theta *
              (params.gamma * s.theta + 2.0 * params.u.dot(ru.transpose() * sigma));
    return d;
  });
  return {project_to_so3(next.r_hat), next.v, next.theta};
}

GasObserverState gas_measurement_jump(const GasObserverState& state,
                                      std::size_t index, const Vector3& body,
                                      const ObserverGains& gains) {
  check_index(index, state.vector_estimates.size());
  GasObserverState out = state;
  out.vector_estimates[index] =
      measurement_update(state.vector_estimates[index], state.r_hat, body, gains.k_r);
  return out;
}

GasObserverState gas_theta_jump(const GasObserverState& state,
                                const VectorObservationSet& set,
                                const ParameterSetA& params) {
  const double mu = mu_phi(state.theta, state.vector_estimates, set, params);
  if (!(mu >= params.delta)) {
    throw ContractViolation("gas_theta_jump: state is outside the jump set (μ_φ = " +
                            std::to_string(mu) + " < δ = " +
                            std::to_string(params.delta) + ")");
  }
  GasObserverState out = state;
  out.theta = theta_argmin(state.vector_estimates, set, params);
  return out;
}

Vector3 innovation_cf(const Matrix3& r_hat, const HeldMeasurements& held,
                      const VectorObservationSet& set, const ComplementaryGains& gains) {
  Vector3 sigma = Vector3::Zero();
  for (std::size_t i = 0; i < set.size(); ++i) {
    if (!held[i]) continue;
    sigma += gains.k_i[i] * (r_hat * *held[i]).cross(set.vectors[i]);
  }
  return sigma;
}

RotationMatrix cf_zoh_step(const RotationMatrix& r_hat, const Vector3& omega,
                           const HeldMeasurements& held,
                           const VectorObservationSet& set,
                           const ComplementaryGains& gains, double dt) {
  const FlowState x{r_hat.matrix(), {}, 0.0};
  const FlowState next = rk4(x, dt, [&](const FlowState& s) {
    return attitude_flow(s, omega, innovation_cf(s.r_hat, held, set, gains), gains.k_p);
  });
  return project_to_so3(next.r_hat);
}

}  // namespace hyatt

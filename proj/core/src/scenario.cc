#include "hyatt/scenario.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

#include "hyatt/errors.h"
#include "hyatt/observers.h"
#include "hyatt/sensing.h"

namespace hyatt {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

SamplingSchedule effective_schedule(const ScenarioConfig& config) {
  SamplingSchedule s = config.schedule;
  if (config.augmentation) s.push_back(config.augmentation->window);
  return s;
}

Rng make_rng(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{seed & 0xffffffffu, seed >> 32, stream};
  return Rng(seq);
}

// Hybrid observer state shared by the three estimators; fields that an
// estimator does not use stay empty.
struct EstimatorState {
  RotationMatrix r_hat;
  std::vector<Vector3> vectors;
  double theta = 0.0;
  HeldMeasurements held;
};

class Simulation {
 public:
  explicit Simulation(const ScenarioConfig& config)
      : config_(config),
        set_(effective_vectors(config)),
        schedule_(effective_schedule(config)),
        timer_rng_(make_rng(config.seed, 1)),
        noise_rng_(make_rng(config.seed, 2)) {
    analysis_ = weight_matrix(set_);
    if (config.observer == ObserverKind::kGas) params_ = scenario_parameters(config);
    monitor_ = make_monitor(config.gains.k_r, schedule_, config.monitor_mu);

    record_.scenario = config.name;
    record_.observer = config.observer;
    record_.seed = config.seed;
    record_.vector_count = set_.size();
    record_.monitor = monitor_;
    record_.parameters = params_;
    record_.weight_matrix = analysis_.a;
  }

  RunRecord run() {
    initialise();
    const long steps = std::lround(config_.duration / config_.dt);
    record_.rows.reserve(static_cast<std::size_t>(steps) + 2);
    push_row(0.0, "");
    if (is_gas() && in_theta_jump_set(gas_state(), set_, *params_)) {
      theta_jump(0.0);
      push_row(0.0, "th");
    }
    for (long k = 1; k <= steps; ++k) {
      const double t_prev = static_cast<double>(k - 1) * config_.dt;
      const double t = static_cast<double>(k) * config_.dt;
      step(t_prev, t);
    }
    return std::move(record_);
  }

 private:
  bool is_gas() const { return config_.observer == ObserverKind::kGas; }
  bool is_cf() const { return config_.observer == ObserverKind::kCf; }

  GasObserverState gas_state() const { return {est_.r_hat, est_.vectors, est_.theta}; }

  Vector3 sample(std::size_t i) {
    if (config_.augmentation && i == config_.vectors.size()) {
      const auto& a = *config_.augmentation;
      const Vector3 b1 = measure(truth_, set_.vectors[a.first], config_.noise, noise_rng_);
      const Vector3 b2 = measure(truth_, set_.vectors[a.second], config_.noise, noise_rng_);
      return b1.cross(b2);
    }
    return measure(truth_, set_.vectors[i], config_.noise, noise_rng_);
  }

  void initialise() {
    truth_ = angle_axis(config_.truth_angle, config_.truth_axis);
    const auto& init = config_.estimate_init;
    if (init.mode == EstimateInit::Mode::kAntipode) {
      const RotationMatrix error =
          angle_axis(std::numbers::pi, analysis_.eigenvector(init.eigen_index));
      est_.r_hat = project_to_so3((error.transpose() * truth_).matrix());
    } else {
      est_.r_hat = angle_axis(init.angle, init.axis);
    }
    timers_ = initial_timers(schedule_, timer_rng_);

    if (is_cf()) {
      est_.held.assign(set_.size(), std::nullopt);
      return;
    }
    est_.vectors.resize(set_.size());
    for (std::size_t i = 0; i < set_.size(); ++i) {
      est_.vectors[i] = config_.vector_init == VectorInit::kReference
                            ? set_.vectors[i]
                            : Vector3(est_.r_hat * sample(i));
    }
    est_.theta = is_gas() ? config_.theta_init : 0.0;
    record_.initial_vector_error_sq.resize(set_.size());
    for (std::size_t i = 0; i < set_.size(); ++i) {
      record_.initial_vector_error_sq[i] = vector_error_of(i).squaredNorm();
    }
  }

  Vector3 vector_error_of(std::size_t i) const {
    return vector_error(truth_, est_.r_hat, est_.vectors[i], set_.vectors[i]);
  }

  double weighted_vector_error_sq() const {
    double s = 0.0;
    for (std::size_t i = 0; i < set_.size(); ++i) {
      s += set_.weights[i] * vector_error_of(i).squaredNorm();
    }
    return s;
  }

  RotationMatrix attitude_error() const { return truth_ * est_.r_hat.transpose(); }

  double current_VR() const {
    const Vector3 u = params_ ? params_->u : Vector3::UnitZ();
    const double gamma = params_ ? params_->gamma : 0.0;
    return lyapunov_VR(attitude_error(), est_.theta, analysis_.a, gamma, u);
  }

  Vector3 current_innovation() const {
    switch (config_.observer) {
      case ObserverKind::kAgas: return innovation_agas(est_.vectors, set_);
      case ObserverKind::kGas: return innovation_gas(est_.vectors, est_.theta, set_, *params_);
      case ObserverKind::kCf:
        return innovation_cf(est_.r_hat.matrix(), est_.held, set_, config_.cf_gains);
    }
    return Vector3::Zero();
  }

  void push_row(double t, std::string events) {
    RunRow row;
    row.t = t;
    row.jump_count = jumps_;
    row.attitude_error_deg = geodesic_angle_deg(attitude_error());
    row.theta = est_.theta;
    row.mu_phi = is_gas() ? mu_phi(est_.theta, est_.vectors, set_, *params_) : kNaN;
    row.lyapunov_VR = current_VR();
    row.innovation_norm = current_innovation().norm();
    row.lyapunov_vr.resize(set_.size(), kNaN);
    if (is_cf()) {
      row.vector_error_norm = kNaN;
    } else {
      double sq = 0.0;
      for (std::size_t i = 0; i < set_.size(); ++i) {
        const Vector3 e = vector_error_of(i);
        sq += e.squaredNorm();
        row.lyapunov_vr[i] = lyapunov_vr_i(e, timers_.remaining[i], monitor_);
      }
      row.vector_error_norm = std::sqrt(sq);
    }
    row.events = std::move(events);
    record_.rows.push_back(std::move(row));
  }

  void flow(const Vector3& omega) {
    switch (config_.observer) {
      case ObserverKind::kAgas: {
        auto next = agas_flow_step({est_.r_hat, est_.vectors}, omega, set_, config_.gains,
                                   config_.dt);
        est_.r_hat = next.r_hat;
        est_.vectors = std::move(next.vector_estimates);
        break;
      }
      case ObserverKind::kGas: {
        auto next = gas_flow_step(gas_state(), omega, set_, config_.gains, *params_,
                                  config_.dt);
        est_.r_hat = next.r_hat;
        est_.vectors = std::move(next.vector_estimates);
        est_.theta = next.theta;
        break;
      }
      case ObserverKind::kCf:
        est_.r_hat =
            cf_zoh_step(est_.r_hat, omega, est_.held, set_, config_.cf_gains, config_.dt);
        break;
    }
  }

  void measurement_jump(double t, std::size_t i) {
    JumpAudit audit;
    audit.kind = JumpAudit::Kind::kMeasurement;
    audit.t = t;
    audit.jump_count = jumps_;
    audit.index = i;
    const RotationMatrix before = est_.r_hat;
    const Vector3 body = sample(i);

    if (!is_cf()) {
      audit.vector_error_sq_before = vector_error_of(i).squaredNorm();
      audit.vr_before = lyapunov_vr_i(vector_error_of(i), timers_.remaining[i], monitor_);
    }
    switch (config_.observer) {
      case ObserverKind::kAgas:
      case ObserverKind::kGas: {
        // Both hybrid observers share the same measurement update.
        auto next = agas_measurement_jump({est_.r_hat, est_.vectors}, i, body, config_.gains);
        est_.r_hat = next.r_hat;
        est_.vectors = std::move(next.vector_estimates);
        break;
      }
      case ObserverKind::kCf:
        est_.held[i] = body;
        break;
    }
    timers_.remaining[i] = reset_timer(i, schedule_, timer_rng_);
    audit.tau_after = timers_.remaining[i];
    if (!is_cf()) {
      audit.vector_error_sq_after = vector_error_of(i).squaredNorm();
      audit.vr_after = lyapunov_vr_i(vector_error_of(i), timers_.remaining[i], monitor_);
    }
    audit.attitude_continuous = est_.r_hat == before;
    record_.jumps.push_back(audit);
    ++jumps_;
  }

  void theta_jump(double t) {
    JumpAudit audit;
    audit.kind = JumpAudit::Kind::kTheta;
    audit.t = t;
    audit.jump_count = jumps_;
    audit.theta_before = est_.theta;
    audit.mu_phi_before = mu_phi(est_.theta, est_.vectors, set_, *params_);
    audit.VR_before = current_VR();
    audit.weighted_vector_error_sq = weighted_vector_error_sq();
    const RotationMatrix before = est_.r_hat;

    const auto next = gas_theta_jump(gas_state(), set_, *params_);
    est_.theta = next.theta;

    audit.theta_after = est_.theta;
    audit.mu_phi_after = mu_phi(est_.theta, est_.vectors, set_, *params_);
    audit.VR_after = current_VR();
    audit.attitude_continuous = est_.r_hat == before;
    record_.jumps.push_back(audit);
    ++jumps_;
  }

  void step(double t_prev, double t) {
    const Vector3 omega = truth_omega(t_prev, config_.omega_amplitude);
    truth_ = integrate_rotation_step(truth_, omega, config_.dt);
    flow(omega);

    auto advanced = advance_timers(std::move(timers_), config_.dt);
    timers_ = std::move(advanced.bank);
    std::string events;
    for (std::size_t i : advanced.fired) {
      measurement_jump(t, i);
      if (!events.empty()) events += ';';
      events += "m" + std::to_string(i + 1);
    }
    if (is_gas() && in_theta_jump_set(gas_state(), set_, *params_)) {
      theta_jump(t);
      if (!events.empty()) events += ';';
      events += "th";
    }
    push_row(t, std::move(events));
  }

  const ScenarioConfig& config_;
  VectorObservationSet set_;
  SamplingSchedule schedule_;
  WeightMatrixAnalysis analysis_;
  std::optional<ParameterSetA> params_;
  LyapunovMonitor monitor_;
  Rng timer_rng_;
  Rng noise_rng_;

  RotationMatrix truth_;
  EstimatorState est_;
  TimerBank timers_;
  long jumps_ = 0;
  RunRecord record_;
};

}  // namespace

Vector3 truth_omega(double t, double omega_amplitude) {
  return omega_amplitude * Vector3(std::sin(0.1 * t),
                                   std::sin(0.1 * t + std::numbers::pi / 3.0),
                                   std::cos(0.5 * t));
}

VectorObservationSet effective_vectors(const ScenarioConfig& config) {
  if (!config.augmentation) return config.vectors;
  const auto& a = *config.augmentation;
  return augment_cross_product(config.vectors, a.first, a.second, a.weight);
}

ParameterSetA scenario_parameters(const ScenarioConfig& config) {
  const auto analysis = weight_matrix(effective_vectors(config));
  ParameterSetA params;
  try {
    params = config.parameters ? *config.parameters
                               : design_parameters(analysis, config.design);
  } catch (const AssumptionViolation& e) {
    throw ConfigError(std::string("cannot design the θ parameter set: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("cannot design the θ parameter set: ") + e.what());
  }
  const auto violations = validate(params, analysis);
  if (!violations.empty()) {
    throw ConfigError("inadmissible θ parameter set: " + violations.front().field + ": " +
                      violations.front().message);
  }
  return params;
}

RunRecord run_scenario(const ScenarioConfig& config) {
  config.validate();
  ScenarioConfig local = config;
  try {
    Simulation sim(local);
    return sim.run();
  } catch (const AssumptionViolation& e) {
    throw ConfigError(e.what());
  }
}

double averaged_error(const RunRecord& record, double t_start) {
  double sum = 0.0;
  std::size_t n = 0;
  for (const auto& row : record.rows) {
    if (row.t >= t_start) {
      sum += row.attitude_error_deg;
      ++n;
    }
  }
  if (n == 0) throw std::invalid_argument("averaged_error: no samples after t_start");
  return sum / static_cast<double>(n);
}

}  // namespace hyatt

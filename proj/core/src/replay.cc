#include "hyatt/replay.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "hyatt/errors.h"
#include "hyatt/scenario.h"
#include "hyatt/sensing.h"

namespace hyatt {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

VectorObservationSet tag_reference_set(const std::vector<double>& weights) {
  const auto refs = inertial_reference_vectors();
  VectorObservationSet set;
  set.vectors.assign(refs.begin(), refs.end());
  set.weights = weights;
  return set;
}

}  // namespace

void ReplayConfig::validate() const {
  if (weights.size() != 5) throw ConfigError("replay: need exactly 5 weights");
  for (double w : weights) {
    if (!(w > 0.0)) throw ConfigError("replay: weights must be positive");
  }
  if (observer == ObserverKind::kCf && cf_gains.k_i.size() != 5) {
    throw ConfigError("replay: need exactly 5 complementary filter gains");
  }
  if (!(max_substep > 0.0)) throw ConfigError("replay: max_substep must be positive");
  try {
    gains.validate();
  } catch (const std::invalid_argument& e) {
    throw ConfigError(std::string("replay: ") + e.what());
  }
}

ReplayRecord run_replay(const TagLog& log, const ReplayConfig& config) {
  config.validate();
  const VectorObservationSet set = tag_reference_set(config.weights);
  const auto analysis = weight_matrix(set);

  ReplayRecord record;
  record.observer = config.observer;
  const bool gas = config.observer == ObserverKind::kGas;
  const bool cf = config.observer == ObserverKind::kCf;
  if (gas) record.parameters = design_parameters(analysis, config.design);
  const ParameterSetA* params = record.parameters ? &*record.parameters : nullptr;

  GasObserverState state{config.initial_estimate, set.vectors, 0.0};
  HeldMeasurements held(set.size());
  long jumps = 0;
  std::string pending;

  auto note = [&](const std::string& e) {
    if (!pending.empty()) pending += ';';
    pending += e;
  };
  auto theta_check = [&] {
    if (gas && in_theta_jump_set(state, set, *params)) {
      state = gas_theta_jump(state, set, *params);
      ++jumps;
      note("th");
    }
  };
  auto flow = [&](const Vector3& omega, double dt) {
    if (cf) {
      state.r_hat = cf_zoh_step(state.r_hat, omega, held, set, config.cf_gains, dt);
    } else if (gas) {
      state = gas_flow_step(state, omega, set, config.gains, *params, dt);
    } else {
      auto next = agas_flow_step({state.r_hat, state.vector_estimates}, omega, set,
                                 config.gains, dt);
      state.r_hat = next.r_hat;
      state.vector_estimates = std::move(next.vector_estimates);
    }
  };

  double t = std::numeric_limits<double>::infinity();
  if (!log.gyro.empty()) t = log.gyro.front().timestamp;
  if (!log.tags.empty()) t = std::min(t, log.tags.front().timestamp);
  if (!std::isfinite(t)) {
    record.final_estimate = state.r_hat;
    return record;
  }
  theta_check();

  Vector3 omega = Vector3::Zero();
  std::size_t g = 0;
  std::size_t k = 0;
  while (g < log.gyro.size() || k < log.tags.size()) {
    const bool gyro_next =
        k >= log.tags.size() ||
        (g < log.gyro.size() && log.gyro[g].timestamp <= log.tags[k].timestamp);
    const double t_event = gyro_next ? log.gyro[g].timestamp : log.tags[k].timestamp;

    const double span = t_event - t;
    if (span > 0.0) {
      const auto substeps = static_cast<long>(std::ceil(span / config.max_substep));
      const double h = span / static_cast<double>(substeps);
      for (long s = 0; s < substeps; ++s) {
        flow(omega, h);
        theta_check();
      }
      t = t_event;
    }

    if (gyro_next) {
      omega = log.gyro[g++].rate;
      continue;
    }
    const auto body = tag_to_body_vectors(log.tags[k++], log.intrinsics,
                                          config.corner_to_reference);
    for (std::size_t i = 0; i < set.size(); ++i) {
      if (cf) {
        held[i] = body[i];
      } else {
        state = gas_measurement_jump(state, i, body[i], config.gains);
      }
      ++jumps;
      note("m" + std::to_string(i + 1));
    }
    theta_check();

    std::vector<std::pair<Vector3, Vector3>> pairs;
    for (std::size_t i = 0; i < set.size(); ++i) pairs.emplace_back(set.vectors[i], body[i]);
    ReplayRow row;
    row.t = t;
    row.jump_count = jumps;
    row.rmse = rmse(state.r_hat, pairs);
    row.theta = state.theta;
    row.mu_phi = gas ? mu_phi(state.theta, state.vector_estimates, set, *params) : kNaN;
    row.events = std::move(pending);
    pending.clear();
    record.rows.push_back(std::move(row));
  }
  record.final_estimate = state.r_hat;
  return record;
}

SyntheticTagLog synthesize_tag_log(const SyntheticTagOptions& o) {
  if (!(o.duration > 0.0) || !(o.gyro_rate_hz > 0.0) || !(o.tag_rate_hz > 0.0)) {
    throw std::invalid_argument("synthesize_tag_log: duration and rates must be positive");
  }
  if (!(o.depth > o.tag_radius) || !(o.tag_radius > 0.0)) {
    throw std::invalid_argument("synthesize_tag_log: need depth > tag_radius > 0");
  }
  o.intrinsics.validate();

  SyntheticTagLog out;
  out.log.intrinsics = o.intrinsics;
  const auto refs = inertial_reference_vectors();
  Rng rng(o.seed);
  std::normal_distribution<double> pixel_noise(0.0, 1.0);

  const auto gyro_count = static_cast<long>(std::floor(o.duration * o.gyro_rate_hz + 1e-9));
  const auto tag_count = static_cast<long>(std::floor(o.duration * o.tag_rate_hz + 1e-9));
  long g = 0;
  long k = 1;  // first frame after the gyro has started
  double t = 0.0;
  Vector3 omega = Vector3::Zero();
  RotationMatrix truth = angle_axis(o.initial_angle, o.initial_axis);

  while (g <= gyro_count || k <= tag_count) {
    const double tg = static_cast<double>(g) / o.gyro_rate_hz;
    const double tk = static_cast<double>(k) / o.tag_rate_hz;
    const bool gyro_next = k > tag_count || (g <= gyro_count && tg <= tk);
    const double t_event = gyro_next ? tg : tk;
    if (t_event > t) {
      truth = integrate_rotation_step_exact(truth, omega, t_event - t);
      t = t_event;
    }
    if (gyro_next) {
      omega = truth_omega(t, o.omega_amplitude);
      out.log.gyro.push_back({t, omega});
      ++g;
      continue;
    }
    TagObservation obs;
    obs.timestamp = t;
    for (int c = 0; c < 4; ++c) {
      const Vector3 p = truth.transpose() * (o.tag_radius * refs[c]) + o.depth * Vector3::UnitZ();
      PixelDepth px = project(p, o.intrinsics);
      if (o.pixel_noise > 0.0) {
        px.u += o.pixel_noise * pixel_noise(rng);
        px.v += o.pixel_noise * pixel_noise(rng);
      }
      obs.corners[c] = px;
    }
    out.log.tags.push_back(obs);
    out.truth_at_tags.push_back(truth);
    ++k;
  }
  return out;
}

}  // namespace hyatt

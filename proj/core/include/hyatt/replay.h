#pragma once

/// @file
/// Offline replay of a gyro + fiducial-tag log through one of the observers,
/// and a synthetic log generator with known ground truth.

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hyatt/config.h"
#include "hyatt/gain_design.h"
#include "hyatt/observers.h"
#include "hyatt/so3.h"
#include "hyatt/vision.h"

namespace hyatt {

struct ReplayConfig {
  ObserverKind observer = ObserverKind::kGas;
  /// One weight per tag vector (four corners, then the normal).
  std::vector<double> weights = {5.0 / 15, 4.0 / 15, 3.0 / 15, 2.0 / 15, 1.0 / 15};
  ObserverGains gains{10.5, 0.5};
  ComplementaryGains cf_gains{9.5, {5.0 / 15, 4.0 / 15, 3.0 / 15, 2.0 / 15, 1.0 / 15}};
  DesignOptions design;
  /// corner_to_reference[c] is the reference slot of detected corner c.
  std::array<int, 4> corner_to_reference = {0, 1, 2, 3};
  RotationMatrix initial_estimate;
  /// Longest flow step between log events.
  double max_substep = 1e-3;

  /// Throws ConfigError on invalid settings.
  void validate() const;
};

/// One row per tag frame, after that frame's jumps.
struct ReplayRow {
  double t = 0.0;
  long jump_count = 0;
  double rmse = 0.0;
  double theta = 0.0;
  /// NaN unless the GAS observer runs.
  double mu_phi = 0.0;
  std::string events;
};

struct ReplayRecord {
  ObserverKind observer = ObserverKind::kGas;
  std::optional<ParameterSetA> parameters;
  std::vector<ReplayRow> rows;
  RotationMatrix final_estimate;
};

/// Replays @p log. Gyro samples are held until the next sample; before the
/// first sample the rate is zero. Each tag frame applies one measurement jump
/// per vector. A log without tag frames runs open loop.
ReplayRecord run_replay(const TagLog& log, const ReplayConfig& config);

struct SyntheticTagOptions {
  double duration = 10.0;
  double gyro_rate_hz = 400.0;
  double tag_rate_hz = 30.0;
  double omega_amplitude = 0.5;
  /// Corner distance from the tag centre (m).
  double tag_radius = 0.1;
  /// Camera-to-tag-centre distance along the optical axis (m).
  double depth = 2.0;
  CameraIntrinsics intrinsics{600.0, 600.0, 320.0, 240.0};
  double initial_angle = 0.0;
  Vector3 initial_axis = Vector3::UnitZ();
  /// Standard deviation of additive pixel noise.
  double pixel_noise = 0.0;
  std::uint64_t seed = 1;
};

struct SyntheticTagLog {
  TagLog log;
  /// True attitude at each tag frame.
  std::vector<RotationMatrix> truth_at_tags;
};

/// Camera (= body) keeps the tag centred on its optical axis while rotating
/// with ω(t) = truth_omega(t, omega_amplitude).
SyntheticTagLog synthesize_tag_log(const SyntheticTagOptions& options);

}  // namespace hyatt

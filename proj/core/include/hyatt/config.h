#pragma once

/// @file
/// Scenario configuration: a flat `key = value` text format (documented in the
/// README), the built-in presets and the serialisation of designed parameter
/// sets.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hyatt/gain_design.h"
#include "hyatt/observers.h"
#include "hyatt/sensing.h"
#include "hyatt/so3.h"

namespace hyatt {

enum class ObserverKind { kAgas, kGas, kCf };

/// "agas", "gas" or "cf" (also accepts "cf_zoh").
ObserverKind parse_observer_kind(const std::string& name);
std::string to_string(ObserverKind kind);

/// How the estimate R̂(0) is specified.
struct EstimateInit {
  enum class Mode {
    kAngleAxis,  ///< R̂(0) = R_a(angle, axis)
    kAntipode,   ///< R̂(0) = R_a(π, v_k)ᵀ R(0), v_k the k-th eigenvector of A
  };
  Mode mode = Mode::kAngleAxis;
  double angle = 0.0;
  Vector3 axis = Vector3::UnitZ();
  int eigen_index = 0;  ///< 0-based, ascending eigenvalues
};

/// Initial value of the auxiliary vectors r̂_i(0).
enum class VectorInit {
  kReference,  ///< r̂_i(0) = r_i
  kMeasured,   ///< r̂_i(0) = R̂(0) b_i(0)
};

/// Extra vector r_first × r_second measured as b_first × b_second.
struct CrossAugmentation {
  std::size_t first = 0;
  std::size_t second = 1;
  double weight = 1.0;
  SamplingWindow window;
};

struct ScenarioConfig {
  std::string name = "custom";
  double duration = 20.0;
  double dt = 1e-3;
  double omega_amplitude = 2.0;
  NoiseModel noise;
  VectorObservationSet vectors;
  SamplingSchedule schedule;
  std::optional<CrossAugmentation> augmentation;
  ObserverKind observer = ObserverKind::kAgas;
  ObserverGains gains;
  ComplementaryGains cf_gains;
  DesignOptions design;
  /// Explicit parameter set; when absent the set is designed from A.
  std::optional<ParameterSetA> parameters;
  double truth_angle = 0.0;
  Vector3 truth_axis = Vector3::UnitZ();
  EstimateInit estimate_init;
  VectorInit vector_init = VectorInit::kReference;
  double theta_init = 0.0;
  std::optional<double> monitor_mu;
  std::uint64_t seed = 1;
  std::string output;

  /// Throws ConfigError on any violated invariant (duration > 0, dt > 0,
  /// dt <= min T_m, sizes consistent, gains in range, ...).
  void validate() const;
};

/// Names accepted by preset(): test1..test6 and escape.
std::vector<std::string> preset_names();

/// Built-in scenario. Throws ConfigError for an unknown name.
ScenarioConfig preset(const std::string& name);

/// Parses the key-value format on top of @p base (defaults to the test1
/// preset). Throws ParseError with the line number for syntax errors and
/// unknown keys, ConfigError for semantic errors.
ScenarioConfig parse_config(std::istream& in, const std::string& source_name,
                            std::optional<ScenarioConfig> base = std::nullopt);
ScenarioConfig load_config(const std::string& path);

/// Writes every field of @p config in the key-value format.
void write_config(const ScenarioConfig& config, std::ostream& out);

/// `gas.*` lines describing @p params; readable back by parse_config().
void write_parameters(const ParameterSetA& params, std::ostream& out);

}  // namespace hyatt

// Command-line harness: simulated runs, log replays, parameter design and
// seeded sweeps.
//
// Exit codes: 0 success, 1 configuration error, 2 runtime contract violation,
// 3 I/O error.

#include <cstdint>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hyatt/config.h"
#include "hyatt/errors.h"
#include "hyatt/record_io.h"
#include "hyatt/replay.h"
#include "hyatt/scenario.h"
#include "hyatt/sweep.h"
#include "hyatt/vision.h"

namespace {

enum ExitCode { kOk = 0, kConfig = 1, kContract = 2, kIo = 3 };

struct ScenarioArgs {
  std::string preset;
  std::string config;
  std::string observer;
  std::optional<std::uint64_t> seed;
};

void add_scenario_options(CLI::App* cmd, ScenarioArgs& args) {
  auto* p = cmd->add_option("--preset", args.preset, "Built-in scenario (test1..test6, escape)");
  auto* c = cmd->add_option("--config", args.config, "Scenario file (key = value)");
  p->excludes(c);
  cmd->add_option("--observer", args.observer, "agas, gas or cf")
      ->check(CLI::IsMember({"agas", "gas", "cf", "cf_zoh"}));
  cmd->add_option("--seed", args.seed, "RNG seed");
}

hyatt::ScenarioConfig load_scenario(const ScenarioArgs& args) {
  hyatt::ScenarioConfig config =
      !args.config.empty() ? hyatt::load_config(args.config)
                           : hyatt::preset(args.preset.empty() ? "test1" : args.preset);
  if (!args.observer.empty()) config.observer = hyatt::parse_observer_kind(args.observer);
  if (args.seed) config.seed = *args.seed;
  return config;
}

int cmd_run(const ScenarioArgs& args, const std::string& out) {
  hyatt::ScenarioConfig config = load_scenario(args);
  if (!out.empty()) config.output = out;
  const auto record = hyatt::run_scenario(config);
  if (config.output.empty() || config.output == "-") {
    hyatt::emit_csv(record, std::cout);
  } else {
    hyatt::emit_csv(record, config.output);
  }
  std::fprintf(stderr, "%s %s seed=%llu averaged_error=%.6f deg jumps=%ld\n",
               config.name.c_str(), hyatt::to_string(config.observer).c_str(),
               static_cast<unsigned long long>(config.seed), hyatt::averaged_error(record),
               record.rows.empty() ? 0L : record.rows.back().jump_count);
  return kOk;
}

int cmd_design(const ScenarioArgs& args) {
  const auto config = load_scenario(args);
  hyatt::write_parameters(hyatt::scenario_parameters(config), std::cout);
  return kOk;
}

int cmd_replay(const std::string& log_path, const std::string& observer, const std::string& out) {
  const auto log = hyatt::parse_tag_log(log_path);
  hyatt::ReplayConfig config;
  if (!observer.empty()) config.observer = hyatt::parse_observer_kind(observer);
  const auto record = hyatt::run_replay(log, config);
  if (out.empty() || out == "-") {
    hyatt::emit_replay_csv(record, std::cout);
  } else {
    hyatt::emit_replay_csv(record, out);
  }
  if (!record.rows.empty()) {
    std::fprintf(stderr, "replay %s frames=%zu final_rmse=%.6g\n",
                 hyatt::to_string(config.observer).c_str(), record.rows.size(),
                 record.rows.back().rmse);
  }
  return kOk;
}

int cmd_synth(const hyatt::SyntheticTagOptions& options, const std::string& out) {
  const auto synthetic = hyatt::synthesize_tag_log(options);
  if (out.empty() || out == "-") {
    hyatt::write_tag_log(synthetic.log, std::cout);
  } else {
    hyatt::write_tag_log(synthetic.log, out);
  }
  return kOk;
}

int cmd_sweep(hyatt::SweepRequest request, const std::string& observer, unsigned seed_count) {
  if (!observer.empty()) request.observer = hyatt::parse_observer_kind(observer);
  for (unsigned s = 1; s <= seed_count; ++s) request.seeds.push_back(s);
  const auto results = hyatt::run_sweep(request);
  std::cout << "preset,seed,averaged_error_deg\n";
  for (const auto& [key, value] : results) {
    std::cout << key.first << ',' << key.second << ',' << value << '\n';
  }
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Hybrid attitude observers with intermittent vector measurements"};
  app.require_subcommand(1);

  ScenarioArgs run_args;
  std::string run_out;
  auto* run = app.add_subcommand("run", "Simulate a scenario and write its CSV record");
  add_scenario_options(run, run_args);
  run->add_option("--out", run_out, "CSV path ('-' for stdout)");

  ScenarioArgs design_args;
  auto* design = app.add_subcommand("design-params", "Print the θ parameter set of a scenario");
  add_scenario_options(design, design_args);

  std::string log_path;
  std::string replay_observer;
  std::string replay_out;
  auto* replay = app.add_subcommand("replay", "Replay a gyro + tag log");
  replay->add_option("--log", log_path, "Tag log file")->required();
  replay->add_option("--observer", replay_observer, "agas, gas or cf")
      ->check(CLI::IsMember({"agas", "gas", "cf", "cf_zoh"}));
  replay->add_option("--out", replay_out, "CSV path ('-' for stdout)");

  hyatt::SyntheticTagOptions synth_options;
  std::string synth_out;
  auto* synth = app.add_subcommand("synth-log", "Write a synthetic tag log with known truth");
  synth->add_option("--duration", synth_options.duration, "Seconds");
  synth->add_option("--omega", synth_options.omega_amplitude, "Angular rate amplitude (rad/s)");
  synth->add_option("--pixel-noise", synth_options.pixel_noise, "Pixel noise std (px)");
  synth->add_option("--initial-angle", synth_options.initial_angle, "Initial attitude angle (rad)");
  synth->add_option("--seed", synth_options.seed, "RNG seed");
  synth->add_option("--out", synth_out, "Log path ('-' for stdout)");

  hyatt::SweepRequest sweep_request;
  sweep_request.presets = {"test1", "test2"};
  std::string sweep_observer;
  unsigned seed_count = 10;
  auto* sweep = app.add_subcommand("sweep", "Averaged errors over seeded runs");
  sweep->add_option("--preset", sweep_request.presets, "Presets to run")->expected(1, -1);
  sweep->add_option("--observer", sweep_observer, "agas, gas or cf")
      ->check(CLI::IsMember({"agas", "gas", "cf", "cf_zoh"}));
  sweep->add_option("--seeds", seed_count, "Seeds 1..N")->check(CLI::PositiveNumber);
  sweep->add_option("--threads", sweep_request.threads, "Worker threads (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (*run) return cmd_run(run_args, run_out);
    if (*design) return cmd_design(design_args);
    if (*replay) return cmd_replay(log_path, replay_observer, replay_out);
    if (*synth) return cmd_synth(synth_options, synth_out);
    if (*sweep) return cmd_sweep(sweep_request, sweep_observer, seed_count);
  } catch (const hyatt::IoError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kIo;
  } catch (const hyatt::ContractViolation& e) {
    std::cerr << "contract violation: " << e.what() << '\n';
    return kContract;
  } catch (const hyatt::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kConfig;
  } catch (const hyatt::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const hyatt::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kContract;
  } catch (const std::invalid_argument& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  }
  return kOk;
}

#include <benchmark/benchmark.h>

#include "hyatt/config.h"
#include "hyatt/gain_design.h"
#include "hyatt/observers.h"
#include "hyatt/scenario.h"
#include "hyatt/so3.h"

namespace hyatt {
namespace {

const Vector3 kOmega(0.3, -0.2, 0.5);

void BM_IntegrateRotation(benchmark::State& state) {
  RotationMatrix r;
  for (auto _ : state) {
    r = integrate_rotation_step(r, kOmega, 1e-3);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_IntegrateRotation);

void BM_AgasFlowStep(benchmark::State& state) {
  const ScenarioConfig c = preset("test1");
  AgasObserverState s{RotationMatrix(), c.vectors.vectors};
  for (auto _ : state) {
    s = agas_flow_step(s, kOmega, c.vectors, c.gains, 1e-3);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_AgasFlowStep);

void BM_GasFlowStep(benchmark::State& state) {
  const ScenarioConfig c = preset("test1");
  const ParameterSetA params = scenario_parameters(c);
  GasObserverState s{RotationMatrix(), c.vectors.vectors, 0.0};
  for (auto _ : state) {
    s = gas_flow_step(s, kOmega, c.vectors, c.gains, params, 1e-3);
    benchmark::DoNotOptimize(s);
  }
}
BENCHMARK(BM_GasFlowStep);

void BM_MuPhi(benchmark::State& state) {
  const ScenarioConfig c = preset("test1");
  const ParameterSetA params = scenario_parameters(c);
  for (auto _ : state) {
    benchmark::DoNotOptimize(mu_phi(0.0, c.vectors.vectors, c.vectors, params));
  }
}
BENCHMARK(BM_MuPhi);

void BM_Scenario(benchmark::State& state) {
  ScenarioConfig c = preset("test1");
  c.observer = static_cast<ObserverKind>(state.range(0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(run_scenario(c));
  }
}
BENCHMARK(BM_Scenario)
    ->Arg(static_cast<int>(ObserverKind::kAgas))
    ->Arg(static_cast<int>(ObserverKind::kGas))
    ->Arg(static_cast<int>(ObserverKind::kCf))
    ->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace hyatt

BENCHMARK_MAIN();

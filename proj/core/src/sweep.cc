#include "hyatt/sweep.h"

#include <algorithm>
#include <future>
#include <thread>

#include "hyatt/scenario.h"

namespace hyatt {

std::map<SweepKey, double> run_sweep(const SweepRequest& request) {
  std::vector<ScenarioConfig> jobs;
  for (const auto& name : request.presets) {
    ScenarioConfig base = preset(name);
    base.observer = request.observer;
    for (auto seed : request.seeds) {
      base.seed = seed;
      jobs.push_back(base);
    }
  }

  unsigned threads = request.threads ? request.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, threads);

  std::map<SweepKey, double> results;
  for (std::size_t start = 0; start < jobs.size(); start += threads) {
    const std::size_t end = std::min(jobs.size(), start + threads);
    std::vector<std::future<double>> batch;
    for (std::size_t i = start; i < end; ++i) {
      batch.push_back(std::async(std::launch::async, [&cfg = jobs[i], &request] {
        return averaged_error(run_scenario(cfg), request.t_start);
      }));
    }
    for (std::size_t i = start; i < end; ++i) {
      results[{jobs[i].name, jobs[i].seed}] = batch[i - start].get();
    }
  }
  return results;
}

}  // namespace hyatt

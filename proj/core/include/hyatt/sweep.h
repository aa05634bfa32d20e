#pragma once

/// @file
/// Independent seeded runs executed in parallel and merged by (preset, seed).

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hyatt/config.h"

namespace hyatt {

struct SweepRequest {
  std::vector<std::string> presets;
  std::vector<std::uint64_t> seeds;
  ObserverKind observer = ObserverKind::kCf;
  /// 0 picks the hardware concurrency.
  unsigned threads = 0;
  double t_start = 2.0;
};

using SweepKey = std::pair<std::string, std::uint64_t>;

/// Averaged attitude error of every (preset, seed) run. The result does not
/// depend on the thread count.
std::map<SweepKey, double> run_sweep(const SweepRequest& request);

}  // namespace hyatt

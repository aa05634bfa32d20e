#pragma once

/// @file
/// CSV emission of run records.
///
/// Simulation columns:
///
///     t, j, attitude_error_deg, vector_error_norm, theta, mu_phi, V_R,
///     innovation_norm, V_r_1 .. V_r_N, events
///
/// Replay columns:
///
///     t, j, rmse, theta, mu_phi, events
///
/// Floats are written in shortest round-trip form; missing values are `nan`.

#include <iosfwd>
#include <string>
#include <vector>

#include "hyatt/replay.h"
#include "hyatt/scenario.h"

namespace hyatt {

std::vector<std::string> csv_header(std::size_t vector_count);

void emit_csv(const RunRecord& record, std::ostream& out);
/// Throws IoError carrying @p path.
void emit_csv(const RunRecord& record, const std::string& path);

/// Reads rows written by emit_csv(). Throws ParseError on malformed input.
std::vector<RunRow> read_csv(std::istream& in, const std::string& source_name);
std::vector<RunRow> read_csv(const std::string& path);

void emit_replay_csv(const ReplayRecord& record, std::ostream& out);
void emit_replay_csv(const ReplayRecord& record, const std::string& path);

}  // namespace hyatt

#include "hyatt/record_io.h"

#include <fstream>
#include <istream>
#include <ostream>

#include "hyatt/errors.h"
#include "text_util.h"

namespace hyatt {

namespace {

constexpr std::size_t kFixedColumns = 8;

void write_joined(std::ostream& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out << ',';
    out << fields[i];
  }
  out << '\n';
}

template <typename Writer>
void write_file(const std::string& path, Writer&& writer) {
  std::ofstream out(path);
  if (!out) throw IoError(path, "cannot open for writing");
  writer(out);
  out.flush();
  if (!out) throw IoError(path, "write failed");
}

}  // namespace

std::vector<std::string> csv_header(std::size_t vector_count) {
  std::vector<std::string> h = {"t",     "j",   "attitude_error_deg", "vector_error_norm",
                                "theta", "mu_phi", "V_R",             "innovation_norm"};
  for (std::size_t i = 0; i < vector_count; ++i) h.push_back("V_r_" + std::to_string(i + 1));
  h.push_back("events");
  return h;
}

void emit_csv(const RunRecord& record, std::ostream& out) {
  using text::format_double;
  write_joined(out, csv_header(record.vector_count));
  std::vector<std::string> fields;
  for (const auto& row : record.rows) {
    fields = {format_double(row.t),
              std::to_string(row.jump_count),
              format_double(row.attitude_error_deg),
              format_double(row.vector_error_norm),
              format_double(row.theta),
              format_double(row.mu_phi),
              format_double(row.lyapunov_VR),
              format_double(row.innovation_norm)};
    for (std::size_t i = 0; i < record.vector_count; ++i) {
      fields.push_back(i < row.lyapunov_vr.size() ? format_double(row.lyapunov_vr[i])
                                                  : "nan");
    }
    fields.push_back(row.events);
    write_joined(out, fields);
  }
}

void emit_csv(const RunRecord& record, const std::string& path) {
  write_file(path, [&](std::ostream& out) { emit_csv(record, out); });
}

std::vector<RunRow> read_csv(std::istream& in, const std::string& source_name) {
  std::string line;
  int line_no = 1;
  if (!std::getline(in, line)) throw ParseError(source_name, 1, "missing header");
  const auto header = text::split(text::trim(line), ',');
  if (header.size() < kFixedColumns + 1 || header.front() != "t" ||
      header.back() != "events") {
    throw ParseError(source_name, 1, "unrecognised header");
  }
  const std::size_t columns = header.size();
  const std::size_t vector_count = columns - kFixedColumns - 1;

  std::vector<RunRow> rows;
  while (std::getline(in, line)) {
    ++line_no;
    if (text::trim(line).empty()) continue;
    const auto f = text::split(text::trim(line), ',');
    if (f.size() != columns) {
      throw ParseError(source_name, line_no,
                       "expected " + std::to_string(columns) + " columns, found " +
                           std::to_string(f.size()));
    }
    auto num = [&](std::size_t i) {
      const auto v = text::parse_double(f[i]);
      if (!v) throw ParseError(source_name, line_no, "malformed number '" + std::string(f[i]) + "'");
      return *v;
    };
    RunRow row;
    row.t = num(0);
    const auto j = text::parse_int(f[1]);
    if (!j) throw ParseError(source_name, line_no, "malformed jump count");
    row.jump_count = static_cast<long>(*j);
    row.attitude_error_deg = num(2);
    row.vector_error_norm = num(3);
    row.theta = num(4);
    row.mu_phi = num(5);
    row.lyapunov_VR = num(6);
    row.innovation_norm = num(7);
    for (std::size_t i = 0; i < vector_count; ++i) row.lyapunov_vr.push_back(num(kFixedColumns + i));
    row.events = std::string(f.back());
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<RunRow> read_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open for reading");
  return read_csv(in, path);
}

void emit_replay_csv(const ReplayRecord& record, std::ostream& out) {
  using text::format_double;
  write_joined(out, {"t", "j", "rmse", "theta", "mu_phi", "events"});
  for (const auto& row : record.rows) {
    write_joined(out, {format_double(row.t), std::to_string(row.jump_count),
                       format_double(row.rmse), format_double(row.theta),
                       format_double(row.mu_phi), row.events});
  }
}

void emit_replay_csv(const ReplayRecord& record, const std::string& path) {
  write_file(path, [&](std::ostream& out) { emit_replay_csv(record, out); });
}

}  // namespace hyatt

#include "hyatt/vision.h"

#include <cmath>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>

#include "text_util.h"

namespace hyatt {

namespace {

constexpr double kDegenerateTolerance = 1e-9;

}  // namespace

void CameraIntrinsics::validate() const {
  if (!(fx > 0.0) || !(fy > 0.0)) {
    throw std::invalid_argument("camera intrinsics: focal lengths must be positive");
  }
}

Vector3 deproject(double u, double v, double depth, const CameraIntrinsics& k) {
  if (!(depth > 0.0)) {
    throw VisionError("deproject: invalid depth " + std::to_string(depth) +
                      " (must be positive)");
  }
  return depth * Vector3((u - k.cx) / k.fx, (v - k.cy) / k.fy, 1.0);
}

PixelDepth project(const Vector3& point, const CameraIntrinsics& k) {
  if (!(point.z() > 0.0)) throw VisionError("project: point is behind the camera");
  return {k.fx * point.x() / point.z() + k.cx, k.fy * point.y() / point.z() + k.cy,
          point.z()};
}

std::array<Vector3, 5> tag_to_body_vectors(const TagObservation& obs,
                                           const CameraIntrinsics& k,
                                           const std::array<int, 4>& corner_to_reference) {
  std::array<Vector3, 4> points;
  Vector3 centre = Vector3::Zero();
  for (int c = 0; c < 4; ++c) {
    const auto& px = obs.corners[c];
    points[c] = deproject(px.u, px.v, px.depth, k);
    centre += points[c];
  }
  centre /= 4.0;

  std::array<Vector3, 5> out;
  std::array<bool, 4> filled{};
  for (int c = 0; c < 4; ++c) {
    const int slot = corner_to_reference[c];
    if (slot < 0 || slot > 3 || filled[slot]) {
      throw std::invalid_argument("tag_to_body_vectors: corner mapping is not a permutation");
    }
    filled[slot] = true;
    const Vector3 d = points[c] - centre;
    const double n = d.norm();
    if (n < kDegenerateTolerance) {
      throw VisionError("degenerate tag: corner " + std::to_string(c + 1) +
                        " coincides with the tag centre");
    }
    out[slot] = d / n;
  }
  const Vector3 normal = out[0].cross(out[1]);
  const double n = normal.norm();
  if (n < kDegenerateTolerance) {
    throw VisionError("degenerate tag: first two corner directions are collinear");
  }
  out[4] = normal / n;
  return out;
}

std::array<Vector3, 5> inertial_reference_vectors() {
  const double h = std::sqrt(2.0) / 2.0;
  return {Vector3(-h, -h, 0.0), Vector3(-h, h, 0.0), Vector3(h, h, 0.0),
          Vector3(h, -h, 0.0), Vector3(0.0, 0.0, -1.0)};
}

double rmse(const RotationMatrix& r_hat,
            const std::vector<std::pair<Vector3, Vector3>>& pairs) {
  if (pairs.empty()) throw std::invalid_argument("rmse: no vector pairs");
  const Matrix3 rt = r_hat.matrix().transpose();
  double sum = 0.0;
  for (const auto& [r, b] : pairs) sum += (rt * r - b).squaredNorm();
  return std::sqrt(sum / static_cast<double>(pairs.size()));
}

TagLog parse_tag_log(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError(path, "cannot open tag log");
  return parse_tag_log(in, path);
}

TagLog parse_tag_log(std::istream& in, const std::string& source_name) {
  TagLog log;
  bool have_intrinsics = false;
  double last_gyro = -std::numeric_limits<double>::infinity();
  double last_tag = -std::numeric_limits<double>::infinity();
  std::string line;
  int line_no = 0;

  auto numbers = [&](const std::vector<std::string_view>& tokens, std::size_t first) {
    std::vector<double> out;
    for (std::size_t i = first; i < tokens.size(); ++i) {
      const auto value = text::parse_double(tokens[i]);
      if (!value || !std::isfinite(*value)) {
        throw ParseError(source_name, line_no,
                         "malformed number '" + std::string(tokens[i]) + "'");
      }
      out.push_back(*value);
    }
    return out;
  };

  while (std::getline(in, line)) {
    ++line_no;
    const auto tokens = text::split_ws(line);
    if (tokens.empty()) continue;
    if (tokens[0] == "#") {
      if (tokens.size() >= 2 && tokens[1] == "intrinsics") {
        const auto v = numbers(tokens, 2);
        if (v.size() != 4) {
          throw ParseError(source_name, line_no, "intrinsics header needs fx fy cx cy");
        }
        log.intrinsics = {v[0], v[1], v[2], v[3]};
        if (!(v[0] > 0.0 && v[1] > 0.0)) {
          throw ParseError(source_name, line_no, "focal lengths must be positive");
        }
        have_intrinsics = true;
      }
      continue;
    }
    if (tokens[0].front() == '#') continue;

    if (tokens[0] == "G") {
      const auto v = numbers(tokens, 1);
      if (v.size() != 4) throw ParseError(source_name, line_no, "gyro record needs 4 fields");
      if (!(v[0] > last_gyro)) {
        throw ParseError(source_name, line_no, "gyro timestamps must be strictly increasing");
      }
      last_gyro = v[0];
      log.gyro.push_back({v[0], Vector3(v[1], v[2], v[3])});
    } else if (tokens[0] == "T") {
      if (!have_intrinsics) {
        throw ParseError(source_name, line_no, "tag record before '# intrinsics' header");
      }
      const auto v = numbers(tokens, 1);
      if (v.size() != 13) throw ParseError(source_name, line_no, "tag record needs 13 fields");
      if (!(v[0] > last_tag)) {
        throw ParseError(source_name, line_no, "tag timestamps must be strictly increasing");
      }
      last_tag = v[0];
      TagObservation obs;
      obs.timestamp = v[0];
      for (int c = 0; c < 4; ++c) {
        obs.corners[c] = {v[1 + 3 * c], v[2 + 3 * c], v[3 + 3 * c]};
        if (!(obs.corners[c].depth > 0.0)) {
          throw ParseError(source_name, line_no, "corner depth must be positive");
        }
      }
      log.tags.push_back(obs);
    } else {
      throw ParseError(source_name, line_no,
                       "unknown record type '" + std::string(tokens[0]) + "'");
    }
  }
  return log;
}

void write_tag_log(const TagLog& log, std::ostream& out) {
  using text::format_double;
  out << "# intrinsics " << format_double(log.intrinsics.fx) << ' '
      << format_double(log.intrinsics.fy) << ' ' << format_double(log.intrinsics.cx)
      << ' ' << format_double(log.intrinsics.cy) << '\n';
  // Merge by time so the file reads chronologically; gyro first on ties.
  std::size_t g = 0;
  std::size_t t = 0;
  while (g < log.gyro.size() || t < log.tags.size()) {
    const bool take_gyro =
        t >= log.tags.size() ||
        (g < log.gyro.size() && log.gyro[g].timestamp <= log.tags[t].timestamp);
    if (take_gyro) {
      const auto& s = log.gyro[g++];
      out << "G " << format_double(s.timestamp) << ' ' << format_double(s.rate.x())
          << ' ' << format_double(s.rate.y()) << ' ' << format_double(s.rate.z()) << '\n';
    } else {
      const auto& obs = log.tags[t++];
      out << "T " << format_double(obs.timestamp);
      for (const auto& c : obs.corners) {
        out << ' ' << format_double(c.u) << ' ' << format_double(c.v) << ' '
            << format_double(c.depth);
      }
      out << '\n';
    }
  }
}

void write_tag_log(const TagLog& log, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError(path, "cannot open for writing");
  write_tag_log(log, out);
  out.flush();
  if (!out) throw IoError(path, "write failed");
}

}  // namespace hyatt

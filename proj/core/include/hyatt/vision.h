#pragma once

/// @file
/// Turns logged fiducial-tag corner detections (pixels + depths from an RGB-D
/// camera) into body-frame unit vectors, and reads/writes the text log format:
///
///     # intrinsics fx fy cx cy
///     G <t> <wx> <wy> <wz>
///     T <t> <u1> <v1> <d1> <u2> <v2> <d2> <u3> <v3> <d3> <u4> <v4> <d4>
///
/// Times in seconds, rates in rad/s, pixels and metres. Timestamps must be
/// strictly increasing within each record type. Blank lines and other `#`
/// comment lines are ignored.

#include <array>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "hyatt/errors.h"
#include "hyatt/so3.h"

namespace hyatt {

struct CameraIntrinsics {
  double fx = 1.0;
  double fy = 1.0;
  double cx = 0.0;
  double cy = 0.0;

  /// Throws std::invalid_argument unless both focal lengths are positive.
  void validate() const;
};

struct PixelDepth {
  double u = 0.0;
  double v = 0.0;
  double depth = 0.0;
};

struct TagObservation {
  double timestamp = 0.0;
  std::array<PixelDepth, 4> corners;
};

struct GyroSample {
  double timestamp = 0.0;
  Vector3 rate = Vector3::Zero();
};

struct TagLog {
  CameraIntrinsics intrinsics;
  std::vector<GyroSample> gyro;
  std::vector<TagObservation> tags;
};

/// Thrown for non-positive depths and degenerate tag geometry.
class VisionError : public Error {
 public:
  using Error::Error;
};

/// p = d [(u − c_x)/f_x, (v − c_y)/f_y, 1]ᵀ. Throws VisionError for d <= 0.
Vector3 deproject(double u, double v, double depth, const CameraIntrinsics& k);

/// Pinhole projection of a camera-frame point with positive z; inverse of
/// deproject().
PixelDepth project(const Vector3& point, const CameraIntrinsics& k);

/// Four centred corner directions plus their normalised cross product b1 × b2.
/// @p corner_to_reference maps detector corner k to reference slot
/// corner_to_reference[k]. Throws VisionError on degenerate geometry.
std::array<Vector3, 5> tag_to_body_vectors(
    const TagObservation& obs, const CameraIntrinsics& k,
    const std::array<int, 4>& corner_to_reference = {0, 1, 2, 3});

/// Inertial directions of the four tag corners seen from the tag centre, plus
/// the tag normal r1 × r2 / ‖r1 × r2‖ = [0, 0, −1]ᵀ.
std::array<Vector3, 5> inertial_reference_vectors();

/// √((1/N) Σ ‖R̂ᵀ r_i − b_i‖²) over (r_i, b_i) pairs. Throws
/// std::invalid_argument for an empty list.
double rmse(const RotationMatrix& r_hat,
            const std::vector<std::pair<Vector3, Vector3>>& pairs);

/// Reads a log. Throws ParseError (with the line number) on malformed lines
/// or non-increasing timestamps, IoError if the file cannot be opened.
TagLog parse_tag_log(const std::string& path);
TagLog parse_tag_log(std::istream& in, const std::string& source_name);

/// Writes @p log with round-trip exact floating-point formatting.
void write_tag_log(const TagLog& log, std::ostream& out);
void write_tag_log(const TagLog& log, const std::string& path);

}  // namespace hyatt

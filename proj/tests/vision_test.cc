#include "hyatt/vision.h"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "hyatt/errors.h"

namespace hyatt {
namespace {

using std::numbers::pi;

const CameraIntrinsics kCamera{615.0, 612.5, 321.2, 238.9};

// Renders the tag (corners at radius s around the inertial origin) for a
// camera at attitude r whose optical axis points at the tag centre.
TagObservation render(const RotationMatrix& r, double s, double depth) {
  const auto refs = inertial_reference_vectors();
  TagObservation obs;
  for (int c = 0; c < 4; ++c) {
    const Vector3 p = r.transpose() * (s * refs[c]) + depth * Vector3::UnitZ();
    obs.corners[c] = {kCamera.fx * p.x() / p.z() + kCamera.cx,
                      kCamera.fy * p.y() / p.z() + kCamera.cy, p.z()};
  }
  return obs;
}

TEST(DeprojectTest, Values) {
  EXPECT_EQ(deproject(kCamera.cx, kCamera.cy, 1.0, kCamera), Vector3(0, 0, 1));
  EXPECT_EQ(deproject(kCamera.cx + kCamera.fx, kCamera.cy, 2.0, kCamera), Vector3(2, 0, 2));
  EXPECT_EQ(deproject(100.0, 50.0, 2.0, kCamera), 2.0 * deproject(100.0, 50.0, 1.0, kCamera));
  EXPECT_THROW(deproject(1.0, 1.0, 0.0, kCamera), VisionError);
  EXPECT_THROW(deproject(1.0, 1.0, -1.0, kCamera), VisionError);
}

TEST(DeprojectTest, PinholeRoundTrip) {
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> xy(-1.5, 1.5);
  std::uniform_real_distribution<double> z(0.2, 5.0);
  for (int k = 0; k < 1000; ++k) {
    const Vector3 p(xy(rng), xy(rng), z(rng));
    const double u = kCamera.fx * p.x() / p.z() + kCamera.cx;
    const double v = kCamera.fy * p.y() / p.z() + kCamera.cy;
    EXPECT_LE((deproject(u, v, p.z(), kCamera) - p).norm(), 1e-12);
  }
}

TEST(ReferenceTest, Vectors) {
  const auto r = inertial_reference_vectors();
  for (const auto& v : r) EXPECT_NEAR(v.norm(), 1.0, 1e-15);
  EXPECT_LE((r[0].cross(r[1]).normalized() - r[4]).norm(), 1e-15);
  EXPECT_EQ(r[0] + r[2], Vector3::Zero());
  EXPECT_EQ(r[1] + r[3], Vector3::Zero());
}

TEST(TagTest, FrontoParallel) {
  const auto b = tag_to_body_vectors(render(RotationMatrix::Identity(), 0.1, 1.0), kCamera);
  for (const auto& v : b) EXPECT_NEAR(v.norm(), 1.0, 1e-12);
  EXPECT_LE((b[4] - Vector3(0, 0, -1)).norm(), 1e-12);
  EXPECT_NEAR(b[4].dot(b[0]), 0.0, 1e-12);
  EXPECT_NEAR(b[4].dot(b[1]), 0.0, 1e-12);
}

TEST(TagTest, RecoversPoseVectors) {
  std::mt19937_64 rng(21);
  std::normal_distribution<double> n(0.0, 1.0);
  std::uniform_real_distribution<double> angle(-pi, pi);
  const auto refs = inertial_reference_vectors();
  for (int k = 0; k < 100; ++k) {
    const RotationMatrix r = angle_axis(angle(rng), Vector3(n(rng), n(rng), n(rng)).normalized());
    const auto b = tag_to_body_vectors(render(r, 0.08, 1.5), kCamera);
    std::vector<std::pair<Vector3, Vector3>> pairs;
    for (int i = 0; i < 5; ++i) {
      EXPECT_LE((b[i] - r.transpose() * refs[i]).norm(), 1e-9);
      pairs.emplace_back(refs[i], b[i]);
    }
    EXPECT_LT(rmse(r, pairs), 1e-9);
  }
}

TEST(TagTest, CornerMapping) {
  const RotationMatrix r = angle_axis(0.4, Vector3::UnitY());
  TagObservation obs = render(r, 0.1, 2.0);
  // Detector reports corners starting from the second one.
  TagObservation shifted = obs;
  for (int c = 0; c < 4; ++c) shifted.corners[c] = obs.corners[(c + 1) % 4];
  const auto direct = tag_to_body_vectors(obs, kCamera);
  const auto mapped = tag_to_body_vectors(shifted, kCamera, {1, 2, 3, 0});
  for (int i = 0; i < 5; ++i) EXPECT_LE((direct[i] - mapped[i]).norm(), 1e-15);
  EXPECT_THROW(tag_to_body_vectors(obs, kCamera, {0, 0, 2, 3}), std::invalid_argument);
}

TEST(TagTest, DegenerateGeometry) {
  TagObservation obs;
  for (auto& c : obs.corners) c = {300.0, 200.0, 1.0};
  EXPECT_THROW(tag_to_body_vectors(obs, kCamera), VisionError);
  // First two corners opposite each other: collinear directions.
  TagObservation line = render(RotationMatrix::Identity(), 0.1, 1.0);
  std::swap(line.corners[1], line.corners[2]);
  EXPECT_THROW(tag_to_body_vectors(line, kCamera), VisionError);
}

TEST(RmseTest, Values) {
  const RotationMatrix r = angle_axis(pi / 2, Vector3::UnitZ());
  const Vector3 e1 = Vector3::UnitX();
  EXPECT_NEAR(rmse(RotationMatrix::Identity(), {{e1, r.transpose() * e1}}), std::sqrt(2.0), 1e-15);
  EXPECT_EQ(rmse(r, {{e1, r.transpose() * e1}}), 0.0);
  EXPECT_THROW(rmse(r, {}), std::invalid_argument);
}

TEST(TagLogTest, ParsesAndRoundTrips) {
  TagLog log;
  log.intrinsics = kCamera;
  for (int k = 0; k < 20; ++k) log.gyro.push_back({0.0025 * k, Vector3(0.1 * k, -0.3, 1.0 / 3)});
  for (int k = 1; k < 4; ++k) {
    TagObservation obs = render(angle_axis(0.1 * k, Vector3::UnitX()), 0.1, 2.0);
    obs.timestamp = k / 30.0;
    log.tags.push_back(obs);
  }
  std::stringstream text;
  write_tag_log(log, text);
  const TagLog back = parse_tag_log(text, "memory");
  EXPECT_EQ(back.intrinsics.fx, log.intrinsics.fx);
  EXPECT_EQ(back.intrinsics.cy, log.intrinsics.cy);
  ASSERT_EQ(back.gyro.size(), log.gyro.size());
  ASSERT_EQ(back.tags.size(), log.tags.size());
  for (std::size_t k = 0; k < log.gyro.size(); ++k) {
    EXPECT_EQ(back.gyro[k].timestamp, log.gyro[k].timestamp);
    EXPECT_EQ(back.gyro[k].rate, log.gyro[k].rate);
  }
  for (std::size_t k = 0; k < log.tags.size(); ++k) {
    EXPECT_EQ(back.tags[k].timestamp, log.tags[k].timestamp);
    for (int c = 0; c < 4; ++c) {
      EXPECT_EQ(back.tags[k].corners[c].u, log.tags[k].corners[c].u);
      EXPECT_EQ(back.tags[k].corners[c].v, log.tags[k].corners[c].v);
      EXPECT_EQ(back.tags[k].corners[c].depth, log.tags[k].corners[c].depth);
    }
  }
}

TEST(TagLogTest, GyroOnly) {
  std::istringstream in("# intrinsics 600 600 320 240\nG 0 0 0 1\nG 0.01 0 0 1\n");
  const auto log = parse_tag_log(in, "memory");
  EXPECT_EQ(log.gyro.size(), 2u);
  EXPECT_TRUE(log.tags.empty());
}

int error_line(const std::string& text) {
  std::istringstream in(text);
  try {
    parse_tag_log(in, "memory");
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

TEST(TagLogTest, Errors) {
  const std::string header = "# intrinsics 600 600 320 240\n";
  const std::string tag = " 1 1 1 2 2 1 3 3 1 4 4 1\n";
  EXPECT_EQ(error_line(header + "G 0 0 0 1\nG 0.02 0 0 1\nG 0.01 0 0 1\n"), 4);
  EXPECT_EQ(error_line(header + "T 0.1" + tag + "T 0.1" + tag), 3);
  EXPECT_EQ(error_line(header + "G 0 0 x 1\n"), 2);
  EXPECT_EQ(error_line(header + "G 0 0 1\n"), 2);
  EXPECT_EQ(error_line(header + "X 0 0 0 1\n"), 2);
  EXPECT_EQ(error_line("T 0.1" + tag), 1);
  EXPECT_EQ(error_line(header + "T 0.1 1 1 0 2 2 1 3 3 1 4 4 1\n"), 2);
  EXPECT_EQ(error_line("# intrinsics 0 600 320 240\n"), 1);
  EXPECT_THROW(parse_tag_log("/nonexistent/log.txt"), IoError);
}

}  // namespace
}  // namespace hyatt

#include "hyatt/sensing.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "hyatt/errors.h"

namespace hyatt {
namespace {

// Closed-form eigenvalues of a symmetric 3x3 matrix (trigonometric solution of
// the characteristic cubic), ascending.
std::array<double, 3> cubic_eigenvalues(const Matrix3& a) {
  const double p1 = a(0, 1) * a(0, 1) + a(0, 2) * a(0, 2) + a(1, 2) * a(1, 2);
  const double q = a.trace() / 3.0;
  const double p2 = std::pow(a(0, 0) - q, 2) + std::pow(a(1, 1) - q, 2) +
                    std::pow(a(2, 2) - q, 2) + 2.0 * p1;
  const double p = std::sqrt(p2 / 6.0);
  const Matrix3 b = (a - q * Matrix3::Identity()) / p;
  const double r = std::clamp(b.determinant() / 2.0, -1.0, 1.0);
  const double phi = std::acos(r) / 3.0;
  const double e3 = q + 2.0 * p * std::cos(phi);
  const double e1 = q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
  return {e1, 3.0 * q - e1 - e3, e3};
}

VectorObservationSet preset_set() {
  const double s = std::sqrt(2.0);
  return {{Vector3(s / 2, s, 0), Vector3(s / 2, -s / 2, 0), Vector3(0, 0, -1)},
          {0.2, 0.3, 0.5}};
}

TEST(TimerTest, AdvanceWithoutCrossing) {
  const auto out = advance_timers({{0.05, 0.02}}, 0.001);
  EXPECT_NEAR(out.bank.remaining[0], 0.049, 1e-15);
  EXPECT_NEAR(out.bank.remaining[1], 0.019, 1e-15);
  EXPECT_TRUE(out.fired.empty());
}

TEST(TimerTest, SingleCrossingClampsToZero) {
  const auto out = advance_timers({{0.0005, 0.02}}, 0.001);
  ASSERT_EQ(out.fired, std::vector<std::size_t>{0});
  EXPECT_EQ(out.bank.remaining[0], 0.0);
}

TEST(TimerTest, InterFiringGapsStayInWindow) {
  const SamplingSchedule schedule = {{0.09, 0.11}};
  const double dt = 1e-3;
  Rng rng(1);
  TimerBank bank = initial_timers(schedule, rng);
  std::vector<double> firings;
  for (long k = 1; k <= 20000; ++k) {
    auto out = advance_timers(std::move(bank), dt);
    bank = std::move(out.bank);
    for (auto i : out.fired) {
      firings.push_back(static_cast<double>(k) * dt);
      bank.remaining[i] = reset_timer(i, schedule, rng);
    }
    ASSERT_GE(bank.remaining[0], 0.0);
    ASSERT_LE(bank.remaining[0], 0.11);
  }
  ASSERT_GT(firings.size(), 150u);
  for (std::size_t k = 1; k < firings.size(); ++k) {
    const double gap = firings[k] - firings[k - 1];
    EXPECT_GE(gap, 0.09 - dt - 1e-12);
    EXPECT_LE(gap, 0.11 + dt + 1e-12);
  }
}

TEST(TimerTest, ResetDraws) {
  const SamplingSchedule periodic = {{0.02, 0.02}};
  Rng rng(42);
  EXPECT_EQ(reset_timer(0, periodic, rng), 0.02);

  const SamplingSchedule window = {{0.04, 0.06}};
  Rng a(42);
  Rng b(42);
  for (int k = 0; k < 1000; ++k) {
    const double x = reset_timer(0, window, a);
    EXPECT_GE(x, 0.04);
    EXPECT_LE(x, 0.06);
    EXPECT_EQ(x, reset_timer(0, window, b));
  }

  const SamplingSchedule slow = {{0.09, 0.11}};
  double sum = 0.0;
  for (int k = 0; k < 10000; ++k) sum += reset_timer(0, slow, a);
  EXPECT_NEAR(sum / 10000.0, 0.10, 0.001);
}

TEST(ScheduleTest, Validation) {
  EXPECT_NO_THROW(validate_schedule({{0.01, 0.03}}));
  EXPECT_THROW(validate_schedule({{0.0, 0.03}}), ConfigError);
  EXPECT_THROW(validate_schedule({{0.05, 0.03}}), ConfigError);
  EXPECT_THROW(validate_schedule({{0.01, INFINITY}}), ConfigError);
}

TEST(MeasureTest, NoiseFree) {
  Rng rng(1);
  const Vector3 r(0.3, -0.4, 1.2);
  EXPECT_EQ(measure(RotationMatrix::Identity(), r, {}, rng), r);
  for (int k = 0; k < 50; ++k) {
    const RotationMatrix rot = angle_axis(0.1 * k, Vector3(0.0, 0.6, 0.8));
    const Vector3 a = measure(rot, r, {}, rng);
    const Vector3 b = measure(rot, Vector3(1, 2, 3), {}, rng);
    EXPECT_NEAR(a.norm(), r.norm(), 1e-12);
    EXPECT_NEAR(a.dot(b), r.dot(Vector3(1, 2, 3)), 1e-12);
  }
}

TEST(MeasureTest, NoiseCovariance) {
  for (auto convention : {NoiseConvention::kStd, NoiseConvention::kCov}) {
    const NoiseModel noise{0.08, convention};
    const double variance = convention == NoiseConvention::kStd ? 0.08 * 0.08 : 0.08;
    EXPECT_NEAR(noise.stddev() * noise.stddev(), variance, 1e-15);
    Rng rng(2024);
    const Vector3 r = Vector3::UnitX();
    Matrix3 cov = Matrix3::Zero();
    Vector3 mean = Vector3::Zero();
    const int n = 100000;
    for (int k = 0; k < n; ++k) {
      const Vector3 e = measure(RotationMatrix::Identity(), r, noise, rng) - r;
      mean += e;
      cov += e * e.transpose();
    }
    mean /= n;
    cov = cov / n - mean * mean.transpose();
    for (int i = 0; i < 3; ++i) {
      EXPECT_NEAR(cov(i, i), variance, 0.05 * variance);
      for (int j = 0; j < i; ++j) EXPECT_NEAR(cov(i, j), 0.0, 0.05 * variance);
    }
  }
}

TEST(WeightMatrixTest, RankDeficientRejected) {
  EXPECT_THROW(weight_matrix({{Vector3::UnitX(), Vector3::UnitX() * 2}, {1.0, 1.0}}),
               AssumptionViolation);
  EXPECT_THROW(weight_matrix({{Vector3::UnitX()}, {1.0}}), AssumptionViolation);
  EXPECT_THROW(weight_matrix({{Vector3::UnitX(), Vector3::UnitY()}, {1.0, -1.0}}),
               AssumptionViolation);
}

TEST(WeightMatrixTest, Isotropic) {
  const auto an = weight_matrix(
      {{Vector3::UnitX(), Vector3::UnitY(), Vector3::UnitZ()}, {1.0, 1.0, 1.0}});
  EXPECT_EQ(an.a, Matrix3::Identity());
  EXPECT_TRUE(an.lower_pair_repeated);
  EXPECT_TRUE(an.upper_pair_repeated);
  EXPECT_TRUE(an.positive_definite);
}

TEST(WeightMatrixTest, PresetSetAgainstClosedFormEigenvalues) {
  const auto an = weight_matrix(preset_set());
  const auto oracle = cubic_eigenvalues(an.a);
  for (int k = 0; k < 3; ++k) EXPECT_NEAR(an.eigenvalues[k], oracle[k], 1e-12);
  EXPECT_TRUE(an.distinct());
  EXPECT_TRUE(an.positive_definite);
  EXPECT_EQ(an.a, an.a.transpose());

  const Matrix3 v = an.eigenvectors;
  EXPECT_LE((v.transpose() * v - Matrix3::Identity()).norm(), 1e-10);
  EXPECT_LE((v * an.eigenvalues.asDiagonal() * v.transpose() - an.a).norm(), 1e-10);
  for (int k = 0; k < 3; ++k) {
    EXPECT_LE((an.a * an.eigenvector(k) - an.eigenvalues[k] * an.eigenvector(k)).norm(), 1e-12);
  }
}

TEST(WeightMatrixTest, PlanarSetIsSemidefinite) {
  const auto an = weight_matrix({{Vector3::UnitX(), Vector3::UnitY()}, {1.0, 2.0}});
  EXPECT_FALSE(an.positive_definite);
  EXPECT_GE(an.eigenvalues.minCoeff(), -1e-12);
}

TEST(AugmentTest, CrossProductVector) {
  const auto set = augment_cross_product({{Vector3::UnitX(), Vector3::UnitY()}, {1.0, 1.0}},
                                         0, 1, 0.5);
  ASSERT_EQ(set.size(), 3u);
  EXPECT_EQ(set.vectors[2], Vector3::UnitZ());
  EXPECT_EQ(set.weights[2], 0.5);

  const auto augmented = augment_cross_product(preset_set(), 0, 1, 1.0);
  EXPECT_NEAR(augmented.vectors[3].dot(augmented.vectors[0]), 0.0, 1e-12);
  EXPECT_NEAR(augmented.vectors[3].dot(augmented.vectors[1]), 0.0, 1e-12);

  EXPECT_THROW(augment_cross_product({{Vector3::UnitX(), -Vector3::UnitX(), Vector3::UnitY()},
                                      {1.0, 1.0, 1.0}},
                                     0, 1, 1.0),
               AssumptionViolation);
}

TEST(AugmentTest, TagCornersReproduceNormal) {
  const double h = std::sqrt(2.0) / 2;
  const VectorObservationSet tag = {{Vector3(-h, -h, 0), Vector3(-h, h, 0)}, {1.0, 1.0}};
  const Vector3 n = augment_cross_product(tag, 0, 1, 1.0).vectors[2].normalized();
  EXPECT_LE((n - Vector3(0, 0, -1)).norm(), 1e-12);
}

}  // namespace
}  // namespace hyatt

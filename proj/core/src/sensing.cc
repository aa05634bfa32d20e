#include "hyatt/sensing.h"

#include <algorithm>
#include <cmath>
#include <string>

#include <Eigen/Eigenvalues>

#include "hyatt/errors.h"

namespace hyatt {

namespace {

constexpr double kCollinearTolerance = 1e-9;

bool nearly_equal(double lo, double hi) {
  const double scale = std::max({std::abs(lo), std::abs(hi), 1e-300});
  return (hi - lo) / scale < kEigenGapTolerance;
}

}  // namespace

void VectorObservationSet::validate() const {
  if (vectors.size() != weights.size()) {
    throw AssumptionViolation("vector set: " + std::to_string(vectors.size()) +
                              " vectors but " + std::to_string(weights.size()) +
                              " weights");
  }
  if (vectors.size() < 2) {
    throw AssumptionViolation("vector set: at least two inertial vectors are required");
  }
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (!(weights[i] > 0.0) || !std::isfinite(weights[i])) {
      throw AssumptionViolation("vector set: weight " + std::to_string(i + 1) +
                                " must be positive");
    }
    if (!vectors[i].allFinite()) {
      throw AssumptionViolation("vector set: vector " + std::to_string(i + 1) +
                                " is not finite");
    }
  }
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    for (std::size_t j = i + 1; j < vectors.size(); ++j) {
      if (vectors[i].cross(vectors[j]).norm() > kCollinearTolerance) return;
    }
  }
  throw AssumptionViolation("vector set: all inertial vectors are collinear");
}

Matrix3 weight_matrix_of(const VectorObservationSet& set) {
  Matrix3 a = Matrix3::Zero();
  for (std::size_t i = 0; i < set.size(); ++i) {
    a += set.weights[i] * set.vectors[i] * set.vectors[i].transpose();
  }
  return a;
}

WeightMatrixAnalysis weight_matrix(const VectorObservationSet& set) {
  WeightMatrixAnalysis out;
  out.a = weight_matrix_of(set);

  Eigen::SelfAdjointEigenSolver<Matrix3> solver(out.a);
  out.eigenvalues = solver.eigenvalues();
  out.eigenvectors = solver.eigenvectors();

  const double largest = out.eigenvalues(2);
  const int rank = static_cast<int>(
      (out.eigenvalues.array() > 1e-12 * std::max(largest, 1e-300)).count());
  if (rank < 2) {
    throw AssumptionViolation(
        "weight matrix has rank " + std::to_string(rank) +
        " < 2: the inertial vectors are collinear (add a non-collinear vector)");
  }
  out.positive_definite = rank == 3;
  out.lower_pair_repeated = nearly_equal(out.eigenvalues(0), out.eigenvalues(1));
  out.upper_pair_repeated = nearly_equal(out.eigenvalues(1), out.eigenvalues(2));
  return out;
}

VectorObservationSet augment_cross_product(const VectorObservationSet& set,
                                           std::size_t first, std::size_t second,
                                           double weight) {
  if (first >= set.size() || second >= set.size()) {
    throw AssumptionViolation("augment_cross_product: index out of range");
  }
  const Vector3 extra = set.vectors[first].cross(set.vectors[second]);
  if (extra.norm() <= kCollinearTolerance) {
    throw AssumptionViolation("augment_cross_product: vectors " +
                              std::to_string(first + 1) + " and " +
                              std::to_string(second + 1) + " are collinear");
  }
  if (!(weight > 0.0)) {
    throw AssumptionViolation("augment_cross_product: weight must be positive");
  }
  VectorObservationSet out = set;
  out.vectors.push_back(extra);
  out.weights.push_back(weight);
  return out;
}

void validate_schedule(const SamplingSchedule& schedule) {
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const auto& w = schedule[i];
    if (!(w.min_period > 0.0) || !(w.min_period <= w.max_period) ||
        !std::isfinite(w.max_period)) {
      throw ConfigError("sampling window " + std::to_string(i + 1) +
                        " must satisfy 0 < T_m <= T_M < inf");
    }
  }
}

TimerAdvance advance_timers(TimerBank bank, double dt) {
  TimerAdvance out;
  for (std::size_t i = 0; i < bank.remaining.size(); ++i) {
    double& tau = bank.remaining[i];
    tau -= dt;
    if (tau <= kTimerEpsilon) {
      tau = 0.0;
      out.fired.push_back(i);
    }
  }
  out.bank = std::move(bank);
  return out;
}

double reset_timer(std::size_t i, const SamplingSchedule& schedule, Rng& rng) {
  const auto& w = schedule.at(i);
  if (w.min_period == w.max_period) return w.min_period;
  std::uniform_real_distribution<double> dist(w.min_period, w.max_period);
  return dist(rng);
}

TimerBank initial_timers(const SamplingSchedule& schedule, Rng& rng) {
  TimerBank bank;
  bank.remaining.reserve(schedule.size());
  for (const auto& w : schedule) {
    std::uniform_real_distribution<double> dist(0.0, w.max_period);
    bank.remaining.push_back(dist(rng));
  }
  return bank;
}

double NoiseModel::stddev() const {
  return convention == NoiseConvention::kStd ? sigma : std::sqrt(sigma);
}

Vector3 measure(const RotationMatrix& r, const Vector3& inertial,
                const NoiseModel& noise, Rng& rng) {
  Vector3 b = r.matrix().transpose() * inertial;
  const double sd = noise.stddev();
  if (sd > 0.0) {
    std::normal_distribution<double> gauss(0.0, sd);
    for (int k = 0; k < 3; ++k) b(k) += gauss(rng);
  }
  return b;
}

}  // namespace hyatt

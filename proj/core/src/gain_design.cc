#include "hyatt/gain_design.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hyatt/errors.h"

namespace hyatt {

namespace {

constexpr double kPi = std::numbers::pi;

double gamma_bound(double delta_star) { return 4.0 * delta_star / (kPi * kPi); }

double delta_bound(double delta_star, double gamma, double theta_max) {
  return (gamma_bound(delta_star) - gamma) * theta_max * theta_max / 2.0;
}

double max_magnitude(const std::vector<double>& thetas) {
  double m = 0.0;
  for (double t : thetas) m = std::max(m, std::abs(t));
  return m;
}

}  // namespace

SpectrumCase classify_spectrum(const WeightMatrixAnalysis& analysis) {
  const double l1 = analysis.eigenvalues(0);
  const double l2 = analysis.eigenvalues(1);
  const double l3 = analysis.eigenvalues(2);
  if (!(l1 > 0.0)) {
    throw AssumptionViolation("gain design requires a positive definite weight matrix");
  }
  if (analysis.upper_pair_repeated) {
    throw AssumptionViolation(
        "gain design requires λ2 < λ3; the two largest eigenvalues coincide");
  }
  if (analysis.lower_pair_repeated) return SpectrumCase::kRepeatedSmallest;
  const double threshold = l1 * l3 / (l3 - l1);
  return threshold <= l2 ? SpectrumCase::kWideGap : SpectrumCase::kNarrowGap;
}

ParameterSetA design_parameters(const WeightMatrixAnalysis& analysis,
                                const DesignOptions& options) {
  if (!(options.gamma_fraction > 0.0 && options.gamma_fraction < 1.0) ||
      !(options.delta_fraction > 0.0 && options.delta_fraction < 1.0)) {
    throw std::invalid_argument("design_parameters: fractions must lie in (0, 1)");
  }
  if (!(options.k_theta > 0.0)) {
    throw std::invalid_argument("design_parameters: k_theta must be positive");
  }
  if (options.theta_set.empty()) {
    throw std::invalid_argument("design_parameters: theta set is empty");
  }
  for (double t : options.theta_set) {
    if (!(std::abs(t) > 0.0 && std::abs(t) <= kPi)) {
      throw std::invalid_argument("design_parameters: every |θ| must lie in (0, π]");
    }
  }
  if (!(options.repeated_split >= 0.0 && options.repeated_split <= 1.0)) {
    throw std::invalid_argument("design_parameters: repeated_split must lie in [0, 1]");
  }

  ParameterSetA p;
  p.spectrum_case = classify_spectrum(analysis);
  const double l1 = analysis.eigenvalues(0);
  const double l2 = analysis.eigenvalues(1);
  const double l3 = analysis.eigenvalues(2);

  Vector3 alpha_sq;
  switch (p.spectrum_case) {
    case SpectrumCase::kRepeatedSmallest: {
      const double a3 = 1.0 - l2 / l3;
      const double rest = 1.0 - a3;
      alpha_sq = Vector3(options.repeated_split * rest,
                         (1.0 - options.repeated_split) * rest, a3);
      p.delta_star = l1 * (1.0 - l2 / l3);
      break;
    }
    case SpectrumCase::kWideGap: {
      alpha_sq = Vector3(0.0, l2 / (l2 + l3), l3 / (l2 + l3));
      p.delta_star = l1;
      break;
    }
    case SpectrumCase::kNarrowGap: {
      const double sigma_a = 2.0 * (l1 * l2 + l1 * l3 + l2 * l3);
      alpha_sq = Vector3(1.0 - 4.0 * l2 * l3 / sigma_a, 1.0 - 4.0 * l1 * l3 / sigma_a,
                         1.0 - 4.0 * l1 * l2 / sigma_a);
      p.delta_star = 4.0 * l1 * l2 * l3 / sigma_a;
      break;
    }
  }

  // Round-off can push a zero coefficient a few ulps negative.
  p.alpha = alpha_sq.cwiseMax(0.0).cwiseSqrt();
  p.alpha /= p.alpha.norm();
  p.u = (analysis.eigenvectors * p.alpha).normalized();

  p.theta_set = options.theta_set;
  p.theta_max = max_magnitude(p.theta_set);
  p.k_theta = options.k_theta;
  p.gamma = options.gamma_fraction * gamma_bound(p.delta_star);
  p.delta = options.delta_fraction * delta_bound(p.delta_star, p.gamma, p.theta_max);
  return p;
}

double gap_function(const Vector3& u, const Vector3& v, const Matrix3& a) {
  const Matrix3 eye = Matrix3::Identity();
  const double vav = v.dot(a * v);
  const Matrix3 m = a.trace() * eye - a - 2.0 * vav * (eye - v * v.transpose());
  return u.dot(m * u);
}

double min_gap_over_eigenvectors(const Vector3& u,
                                 const WeightMatrixAnalysis& analysis) {
  double best = std::numeric_limits<double>::infinity();
  for (int k = 0; k < 3; ++k) {
    for (double sign : {1.0, -1.0}) {
      best = std::min(best, gap_function(u, sign * analysis.eigenvector(k), analysis.a));
    }
  }
  return best;
}

std::vector<ParameterViolation> validate(const ParameterSetA& params,
                                         const WeightMatrixAnalysis& analysis) {
  std::vector<ParameterViolation> out;
  auto fail = [&out](std::string field, std::string message) {
    out.push_back({std::move(field), std::move(message)});
  };

  if (params.theta_set.empty()) fail("theta_set", "Θ must be nonempty");
  for (double t : params.theta_set) {
    if (!(std::abs(t) > 0.0 && std::abs(t) <= kPi)) {
      fail("theta_set", "|θ| = " + std::to_string(std::abs(t)) + " not in (0, π]");
    }
  }
  if (params.theta_max != max_magnitude(params.theta_set)) {
    fail("theta_set", "θ_M does not equal max |θ'| over Θ");
  }
  if (!(params.k_theta > 0.0)) fail("k_theta", "k_θ must be positive");
  if (!(std::abs(params.u.norm() - 1.0) <= 1e-12)) fail("u", "u must be a unit vector");
  if (!(std::abs(params.alpha.squaredNorm() - 1.0) <= 1e-12)) {
    fail("alpha", "Σ α_i² must equal 1");
  }
  if (!(params.delta_star > 0.0)) fail("delta_star", "Δ* must be positive");
  const double achieved = min_gap_over_eigenvectors(params.u, analysis);
  if (params.delta_star > achieved + 1e-9) {
    fail("delta_star", "Δ* = " + std::to_string(params.delta_star) +
                           " exceeds the gap achieved by u (" +
                           std::to_string(achieved) + ")");
  }
  const double g_max = gamma_bound(params.delta_star);
  if (!(params.gamma > 0.0)) fail("gamma", "γ must be positive");
  if (!(params.gamma < g_max)) {
    fail("gamma", "γ = " + std::to_string(params.gamma) + " must be < 4Δ*/π² = " +
                      std::to_string(g_max));
  }
  const double d_max = delta_bound(params.delta_star, params.gamma, params.theta_max);
  if (!(params.delta > 0.0)) fail("delta", "δ must be positive");
  if (!(params.delta < d_max)) {
    fail("delta", "δ = " + std::to_string(params.delta) +
                      " must be < (4Δ*/π² − γ)θ_M²/2 = " + std::to_string(d_max));
  }
  return out;
}

}  // namespace hyatt

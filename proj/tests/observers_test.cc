#include "hyatt/observers.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include <gtest/gtest.h>

#include "hyatt/errors.h"
#include "hyatt/gain_design.h"

namespace hyatt {
namespace {

using std::numbers::pi;

VectorObservationSet preset_set() {
  const double s = std::sqrt(2.0);
  return {{Vector3(s / 2, s, 0), Vector3(s / 2, -s / 2, 0), Vector3(0, 0, -1)},
          {0.2, 0.3, 0.5}};
}

std::vector<Vector3> rotated(const Matrix3& m, const std::vector<Vector3>& v) {
  std::vector<Vector3> out;
  for (const auto& x : v) out.push_back(m * x);
  return out;
}

class ObserverTest : public ::testing::Test {
 protected:
  const VectorObservationSet set_ = preset_set();
  const WeightMatrixAnalysis analysis_ = weight_matrix(set_);
  const ParameterSetA params_ = design_parameters(analysis_);
  const ObserverGains gains_;
};

TEST_F(ObserverTest, InnovationAgasZeroCases) {
  EXPECT_EQ(innovation_agas(set_.vectors, set_), Vector3::Zero());
  const RotationMatrix r = angle_axis(0.7, Vector3(0, 0.6, 0.8));
  std::vector<Vector3> body;
  for (const auto& v : set_.vectors) body.push_back(r.transpose() * v);
  EXPECT_LE(innovation_agas(rotated(r.matrix(), body), set_).norm(), 1e-15);
}

TEST_F(ObserverTest, InnovationAgasComponentwise) {
  const Matrix3 rt = angle_axis(pi / 2, Vector3(0.8, 0.6, 0)).matrix().transpose();
  const auto est = rotated(rt, set_.vectors);
  Vector3 expected = Vector3::Zero();
  for (std::size_t i = 0; i < set_.size(); ++i) {
    const Vector3& a = est[i];
    const Vector3& b = set_.vectors[i];
    expected += set_.weights[i] * Vector3(a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2],
                                          a[0] * b[1] - a[1] * b[0]);
  }
  EXPECT_LE((innovation_agas(est, set_) - expected).norm(), 1e-15);
}

TEST_F(ObserverTest, AgasFlowWithZeroInnovationIsGyroIntegration) {
  const AgasObserverState s{angle_axis(0.3, Vector3::UnitX()), set_.vectors};
  const Vector3 omega(0.1, -0.2, 0.3);
  const auto next = agas_flow_step(s, omega, set_, gains_, 1e-3);
  EXPECT_EQ(next.vector_estimates, s.vector_estimates);
  EXPECT_LE((next.r_hat.matrix() - integrate_rotation_step(s.r_hat, omega, 1e-3).matrix()).norm(),
            1e-15);
}

TEST_F(ObserverTest, AgasFlowFrozenWithoutDynamics) {
  const AgasObserverState s{angle_axis(0.3, Vector3::UnitX()),
                            rotated(angle_axis(1.0, Vector3::UnitZ()).matrix(), set_.vectors)};
  ObserverGains frozen = gains_;
  frozen.k_o = 0.0;
  const auto next = agas_flow_step(s, Vector3::Zero(), set_, frozen, 1e-3);
  EXPECT_EQ(next.r_hat, s.r_hat);
  EXPECT_EQ(next.vector_estimates, s.vector_estimates);
}

TEST_F(ObserverTest, AgasFlowPreservesVectorNorms) {
  AgasObserverState s{angle_axis(2.0, Vector3(0, 0.6, 0.8)),
                      rotated(angle_axis(1.0, Vector3::UnitZ()).matrix(), set_.vectors)};
  for (int k = 0; k < 5000; ++k) {
    const auto next = agas_flow_step(s, Vector3(0.1, 1.0, -0.5), set_, gains_, 1e-3);
    for (std::size_t i = 0; i < set_.size(); ++i) {
      EXPECT_NEAR(next.vector_estimates[i].norm(), s.vector_estimates[i].norm(), 1e-9);
    }
    s = next;
  }
}

TEST_F(ObserverTest, MeasurementJump) {
  const AgasObserverState s{angle_axis(0.4, Vector3::UnitY()),
                            rotated(angle_axis(1.0, Vector3::UnitZ()).matrix(), set_.vectors)};
  const Vector3 body(0.2, -0.1, 0.9);
  const Vector3 target = s.r_hat * body;

  const auto next = agas_measurement_jump(s, 1, body, gains_);
  EXPECT_EQ(next.r_hat, s.r_hat);
  EXPECT_EQ(next.vector_estimates[0], s.vector_estimates[0]);
  EXPECT_EQ(next.vector_estimates[2], s.vector_estimates[2]);
  EXPECT_LE(((next.vector_estimates[1] - target) -
             (1.0 - gains_.k_r) * (s.vector_estimates[1] - target)).norm(),
            1e-15);

  AgasObserverState at_target = s;
  at_target.vector_estimates[1] = target;
  EXPECT_EQ(agas_measurement_jump(at_target, 1, body, gains_).vector_estimates[1], target);

  AgasObserverState unit = s;
  unit.r_hat = RotationMatrix::Identity();
  unit.vector_estimates[0] = body + Vector3::UnitX();
  const Vector3 residual = agas_measurement_jump(unit, 0, body, gains_).vector_estimates[0] - body;
  EXPECT_LE((residual - Vector3(0.55, 0, 0)).norm(), 1e-15);

  EXPECT_THROW(agas_measurement_jump(s, 3, body, gains_), std::out_of_range);
}

TEST_F(ObserverTest, InnovationGas) {
  const auto est = rotated(angle_axis(0.8, Vector3(0.6, 0, 0.8)).matrix(), set_.vectors);
  EXPECT_LE((innovation_gas(est, 0.0, set_, params_) - innovation_agas(est, set_)).norm(), 1e-15);

  for (int k = 0; k < 3; ++k) {
    const Matrix3 antipode = angle_axis(pi, analysis_.eigenvector(k)).matrix();
    const auto eq = rotated(antipode.transpose(), set_.vectors);
    EXPECT_LE(innovation_gas(eq, 0.0, set_, params_).norm(), 1e-12) << k;
    const double theta = theta_argmin(eq, set_, params_);
    EXPECT_GT(innovation_gas(eq, theta, set_, params_).norm(), 1e-3) << k;
  }
}

TEST_F(ObserverTest, PhiMatchesDuplicateExpression) {
  std::mt19937_64 rng(4);
  std::normal_distribution<double> n(0.0, 1.0);
  EXPECT_EQ(phi(0.0, set_.vectors, set_, params_), 0.0);
  for (int k = 0; k < 50; ++k) {
    const double theta = n(rng);
    std::vector<Vector3> est;
    for (std::size_t i = 0; i < set_.size(); ++i) est.emplace_back(n(rng), n(rng), n(rng));
    // R_u(θ)ᵀ x via Rodrigues with -θ.
    const Vector3& u = params_.u;
    double expected = 0.5 * params_.gamma * theta * theta;
    double at_zero = 0.0;
    for (std::size_t i = 0; i < set_.size(); ++i) {
      const Vector3& x = est[i];
      const Vector3 back = x * std::cos(theta) - u.cross(x) * std::sin(theta) +
                           u * u.dot(x) * (1.0 - std::cos(theta));
      expected += 0.5 * set_.weights[i] * (set_.vectors[i] - back).squaredNorm();
      at_zero += 0.5 * set_.weights[i] * (set_.vectors[i] - x).squaredNorm();
    }
    EXPECT_NEAR(phi(theta, est, set_, params_), expected, 1e-12);
    EXPECT_NEAR(phi(0.0, est, set_, params_), at_zero, 1e-12);
  }
}

TEST_F(ObserverTest, MuPhiAndArgmin) {
  EXPECT_LE(mu_phi(0.0, set_.vectors, set_, params_), 0.0);
  EXPECT_FALSE(in_theta_jump_set({RotationMatrix::Identity(), set_.vectors, 0.0}, set_, params_));

  for (int k = 0; k < 3; ++k) {
    const Matrix3 antipode = angle_axis(pi, analysis_.eigenvector(k)).matrix();
    const auto eq = rotated(antipode.transpose(), set_.vectors);
    EXPECT_GT(mu_phi(0.0, eq, set_, params_), params_.delta) << k;
    const double best = theta_argmin(eq, set_, params_);
    EXPECT_EQ(mu_phi(best, eq, set_, params_), 0.0);

    // Storage order of Θ does not matter.
    ParameterSetA shuffled = params_;
    std::reverse(shuffled.theta_set.begin(), shuffled.theta_set.end());
    EXPECT_EQ(theta_argmin(eq, set_, shuffled), best);
    std::rotate(shuffled.theta_set.begin(), shuffled.theta_set.begin() + 1,
                shuffled.theta_set.end());
    EXPECT_EQ(theta_argmin(eq, set_, shuffled), best);
  }
}

TEST_F(ObserverTest, ArgminTieBreak) {
  // With zero estimates φ depends on θ only through γθ²/2, and ±π/2 tie.
  ParameterSetA p = params_;
  p.theta_set = {-pi / 2, pi, pi / 2};
  const std::vector<Vector3> zeros(set_.size(), Vector3::Zero());
  EXPECT_EQ(theta_argmin(zeros, set_, p), pi / 2);
}

TEST_F(ObserverTest, ThetaJump) {
  const Matrix3 antipode = angle_axis(pi, analysis_.eigenvector(0)).matrix();
  const GasObserverState s{RotationMatrix::Identity(), rotated(antipode.transpose(), set_.vectors),
                           0.0};
  ASSERT_TRUE(in_theta_jump_set(s, set_, params_));
  const double before = phi(s.theta, s.vector_estimates, set_, params_);
  const auto next = gas_theta_jump(s, set_, params_);
  EXPECT_EQ(next.r_hat, s.r_hat);
  EXPECT_EQ(next.vector_estimates, s.vector_estimates);
  EXPECT_EQ(mu_phi(next.theta, next.vector_estimates, set_, params_), 0.0);
  EXPECT_NEAR(before - phi(next.theta, next.vector_estimates, set_, params_),
              mu_phi(0.0, s.vector_estimates, set_, params_), 1e-12);
  EXPECT_FALSE(in_theta_jump_set(next, set_, params_));

  EXPECT_THROW(gas_theta_jump(next, set_, params_), ContractViolation);
  EXPECT_THROW(gas_flow_step(s, Vector3::Zero(), set_, gains_, params_, 1e-3), ContractViolation);
}

TEST_F(ObserverTest, GasFlowAtEquilibriumIsStationary) {
  const GasObserverState s{RotationMatrix::Identity(), set_.vectors, 0.0};
  const auto next = gas_flow_step(s, Vector3::Zero(), set_, gains_, params_, 1e-3);
  EXPECT_EQ(next.theta, 0.0);
  EXPECT_LE((next.r_hat.matrix() - Matrix3::Identity()).norm(), 1e-15);
  for (std::size_t i = 0; i < set_.size(); ++i) {
    EXPECT_LE((next.vector_estimates[i] - set_.vectors[i]).norm(), 1e-15);
  }
}

TEST_F(ObserverTest, ThetaDecaysLikeScalarOde) {
  // Zero vector estimates make σ vanish identically, leaving θ̇ = −k_θ γ θ.
  const double theta0 = 0.3;
  GasObserverState s{RotationMatrix::Identity(), std::vector<Vector3>(3, Vector3::Zero()), theta0};
  const double dt = 1e-3;
  for (int k = 0; k < 1000; ++k) s = gas_flow_step(s, Vector3::Zero(), set_, gains_, params_, dt);
  EXPECT_NEAR(s.theta, theta0 * std::exp(-params_.k_theta * params_.gamma * 1.0), 1e-6);
}

TEST_F(ObserverTest, GasStepHalvingConvergence) {
  const GasObserverState s{angle_axis(0.9, Vector3(0.6, 0.0, 0.8)),
                           rotated(angle_axis(-0.5, Vector3::UnitZ()).matrix(), set_.vectors),
                           0.2};
  const Vector3 omega(0.4, -0.3, 1.0);
  auto error = [&](double dt) {
    const auto coarse = gas_flow_step(s, omega, set_, gains_, params_, dt);
    auto fine = gas_flow_step(s, omega, set_, gains_, params_, dt / 2);
    fine = gas_flow_step(fine, omega, set_, gains_, params_, dt / 2);
    double e = (coarse.r_hat.matrix() - fine.r_hat.matrix()).norm() +
               std::abs(coarse.theta - fine.theta);
    for (std::size_t i = 0; i < set_.size(); ++i) {
      e += (coarse.vector_estimates[i] - fine.vector_estimates[i]).norm();
    }
    return e;
  };
  // Local error O(dt^5): halving dt shrinks the coarse/fine gap about 32x.
  const double ratio = error(4e-3) / error(2e-3);
  EXPECT_GT(ratio, 20.0);
  EXPECT_LT(ratio, 45.0);
}

TEST_F(ObserverTest, GasEqualsAgasWhileThetaStaysZero) {
  // With σ ≡ 0 the θ flow stays at zero and the two observers coincide.
  const RotationMatrix r0 = angle_axis(0.5, Vector3::UnitX());
  GasObserverState g{r0, set_.vectors, 0.0};
  AgasObserverState a{r0, set_.vectors};
  for (int k = 0; k < 2000; ++k) {
    const Vector3 omega(std::sin(1e-3 * k), 0.5, -0.2);
    g = gas_flow_step(g, omega, set_, gains_, params_, 1e-3);
    a = agas_flow_step(a, omega, set_, gains_, 1e-3);
  }
  EXPECT_EQ(g.theta, 0.0);
  EXPECT_LE((g.r_hat.matrix() - a.r_hat.matrix()).norm(), 1e-12);
}

TEST_F(ObserverTest, ComplementaryFilter) {
  const ComplementaryGains cf{12.0, set_.weights};
  const RotationMatrix r = angle_axis(1.1, Vector3(0, 0.6, 0.8));
  HeldMeasurements held;
  for (const auto& v : set_.vectors) held.push_back(Vector3(r.transpose() * v));
  EXPECT_LE(innovation_cf(r.matrix(), held, set_, cf).norm(), 1e-15);

  const HeldMeasurements empty(set_.size());
  EXPECT_EQ(innovation_cf(r.matrix(), empty, set_, cf), Vector3::Zero());

  const ComplementaryGains open{0.0, set_.weights};
  const Vector3 omega(0.3, 0.2, -0.1);
  const RotationMatrix start = angle_axis(0.2, Vector3::UnitY());
  EXPECT_LE((cf_zoh_step(start, omega, held, set_, open, 1e-3).matrix() -
             integrate_rotation_step(start, omega, 1e-3).matrix()).norm(),
            1e-15);
}

}  // namespace
}  // namespace hyatt

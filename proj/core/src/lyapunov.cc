#include "hyatt/lyapunov.h"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hyatt {

double LyapunovMonitor::envelope(double t) const { return alpha * std::exp(-lambda * t); }

double monitor_rate_supremum(double k_r, double max_period) {
  return -(2.0 / max_period) * std::log(1.0 - k_r);
}

LyapunovMonitor make_monitor(double k_r, const SamplingSchedule& schedule,
                             std::optional<double> mu) {
  if (schedule.empty()) throw std::invalid_argument("make_monitor: empty schedule");
  if (!(k_r > 0.0 && k_r < 1.0)) throw std::invalid_argument("make_monitor: k_r not in (0, 1)");
  LyapunovMonitor m;
  for (const auto& w : schedule) m.max_period = std::max(m.max_period, w.max_period);
  const double sup = monitor_rate_supremum(k_r, m.max_period);
  m.mu = mu.value_or(0.5 * sup);
  if (!(m.mu > 0.0 && m.mu < sup)) {
    throw std::invalid_argument("make_monitor: μ must lie in (0, −(2/T̄_M) ln(1 − k_r))");
  }
  m.alpha = std::exp(m.mu * m.max_period);
  m.lambda_jump = m.alpha * (1.0 - k_r) * (1.0 - k_r);
  m.lambda = std::min(-std::log(m.lambda_jump), m.mu);
  return m;
}

Vector3 vector_error(const RotationMatrix& truth, const RotationMatrix& r_hat,
                     const Vector3& estimate, const Vector3& inertial) {
  return inertial - truth.matrix() * (r_hat.matrix().transpose() * estimate);
}

double lyapunov_vr_i(const Vector3& vector_error, double tau,
                     const LyapunovMonitor& monitor) {
  return std::exp(monitor.mu * tau) * vector_error.squaredNorm();
}

double lyapunov_VR(const RotationMatrix& attitude_error, double theta,
                   const Matrix3& a, double gamma, const Vector3& u) {
  const Matrix3 t = attitude_error.matrix() * angle_axis(theta, u).matrix();
  return ((Matrix3::Identity() - t) * a).trace() + 0.5 * gamma * theta * theta;
}

}  // namespace hyatt

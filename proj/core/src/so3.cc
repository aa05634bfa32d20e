#include "hyatt/so3.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include <Eigen/LU>

#include "hyatt/errors.h"

namespace hyatt {

RotationMatrix::RotationMatrix(const Matrix3& m) : m_(m) {
  if (!is_rotation(m)) {
    throw DegenerateMatrixError(
        "matrix is not a rotation (orthogonality residual " +
        std::to_string(orthogonality_residual(m)) + ", det " +
        std::to_string(m.determinant()) + ")");
  }
}

RotationMatrix RotationMatrix::transpose() const {
  return RotationMatrix(m_.transpose(), Unchecked{});
}

RotationMatrix RotationMatrix::operator*(const RotationMatrix& other) const {
  return RotationMatrix(m_ * other.m_, Unchecked{});
}

double orthogonality_residual(const Matrix3& m) {
  return (m.transpose() * m - Matrix3::Identity()).norm();
}

bool is_rotation(const Matrix3& m, double tol) {
  if (!m.allFinite()) return false;
  return orthogonality_residual(m) <= tol && std::abs(m.determinant() - 1.0) <= tol;
}

Matrix3 skew(const Vector3& v) {
  Matrix3 s;
  s << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
       -v.y(), v.x(), 0.0;
  return s;
}

Vector3 psi(const Matrix3& a) {
  return 0.5 * Vector3(a(2, 1) - a(1, 2), a(0, 2) - a(2, 0), a(1, 0) - a(0, 1));
}

RotationMatrix angle_axis(double theta, const Vector3& axis) {
  const double n = axis.norm();
  if (!std::isfinite(n) || std::abs(n - 1.0) > 1e-9) {
    throw std::invalid_argument("angle_axis: axis must be a unit vector (norm " +
                                std::to_string(n) +
                                "); normalize it with axis.normalized()");
  }
  const Matrix3 k = skew(axis / n);
  const Matrix3 r =
      Matrix3::Identity() + std::sin(theta) * k + (1.0 - std::cos(theta)) * k * k;
  return RotationMatrix(r, RotationMatrix::Unchecked{});
}

double geodesic_angle_deg(const RotationMatrix& r) {
  const Matrix3& m = r.matrix();
  const double c = 0.5 * (m.trace() - 1.0);
  const double s = 0.5 * Vector3(m(2, 1) - m(1, 2), m(0, 2) - m(2, 0), m(1, 0) - m(0, 1)).norm();
  return std::atan2(s, c) * 180.0 / std::numbers::pi;
}

RotationMatrix project_to_so3(const Matrix3& m) {
  if (!m.allFinite()) {
    throw DegenerateMatrixError("project_to_so3: non-finite entries");
  }
  const double det = m.determinant();
  if (!(det > 0.0)) {
    throw DegenerateMatrixError("project_to_so3: det(M) = " + std::to_string(det) +
                                " is not positive");
  }
  // Scaled Newton iteration X <- (ζX + X^{-T}/ζ)/2 for the orthogonal polar
  // factor. det > 0 keeps every iterate in GL+(3), so the limit is in SO(3).
  Matrix3 x = m;
  for (int iter = 0; iter < 100; ++iter) {
    const Matrix3 inv_t = x.inverse().transpose();
    const double zeta = std::sqrt(inv_t.norm() / x.norm());
    const Matrix3 next = 0.5 * (zeta * x + inv_t / zeta);
    const double change = (next - x).norm();
    x = next;
    if (change <= 1e-15) break;
  }
  return RotationMatrix(x, RotationMatrix::Unchecked{});
}

RotationMatrix integrate_rotation_step(const RotationMatrix& r,
                                       const Vector3& body_rate, double dt) {
  if (body_rate.isZero(0.0)) return r;
  const Matrix3 w = skew(body_rate);
  const Matrix3& r0 = r.matrix();
  const Matrix3 k1 = r0 * w;
  const Matrix3 k2 = (r0 + 0.5 * dt * k1) * w;
  const Matrix3 k3 = (r0 + 0.5 * dt * k2) * w;
  const Matrix3 k4 = (r0 + dt * k3) * w;
  return project_to_so3(r0 + (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4));
}

RotationMatrix integrate_rotation_step_exact(const RotationMatrix& r,
                                             const Vector3& body_rate,
                                             double dt) {
  const double rate = body_rate.norm();
  if (rate == 0.0) return r;
  return r * angle_axis(rate * dt, body_rate / rate);
}

}  // namespace hyatt

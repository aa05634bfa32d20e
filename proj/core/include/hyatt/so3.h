#pragma once

/// @file
/// Rotation-group algebra on SO(3): hat/vee style maps, angle-axis
/// construction, the geodesic error angle and fixed-step integration of
/// Ṙ = R ω^×.

#include <Eigen/Core>
#include <Eigen/Geometry>

namespace hyatt {

using Vector3 = Eigen::Vector3d;
using Matrix3 = Eigen::Matrix3d;

/// Tolerance used to accept a 3x3 matrix as a rotation.
inline constexpr double kRotationTolerance = 1e-9;

/// An element of SO(3). Construction validates RᵀR = I and det R = +1 to
/// kRotationTolerance; the only way to obtain an unchecked matrix is through
/// project_to_so3().
class RotationMatrix {
 public:
  RotationMatrix() : m_(Matrix3::Identity()) {}

  /// Throws DegenerateMatrixError if @p m is not a rotation within tolerance.
  explicit RotationMatrix(const Matrix3& m);

  static RotationMatrix Identity() { return RotationMatrix(); }

  const Matrix3& matrix() const { return m_; }
  RotationMatrix transpose() const;

  Vector3 operator*(const Vector3& v) const { return m_ * v; }
  RotationMatrix operator*(const RotationMatrix& other) const;

  bool operator==(const RotationMatrix& other) const { return m_ == other.m_; }

 private:
  struct Unchecked {};
  RotationMatrix(const Matrix3& m, Unchecked) : m_(m) {}

  friend RotationMatrix project_to_so3(const Matrix3& m);
  friend RotationMatrix angle_axis(double theta, const Vector3& axis);

  Matrix3 m_;
};

/// ‖MᵀM − I‖_F.
double orthogonality_residual(const Matrix3& m);

/// True when @p m satisfies the SO(3) invariants to @p tol.
bool is_rotation(const Matrix3& m, double tol = kRotationTolerance);

/// x^×, so that skew(a) * b == a.cross(b).
Matrix3 skew(const Vector3& v);

/// Half the vectorised antisymmetric part:
/// ψ(A) = ½[a32 − a23, a13 − a31, a21 − a12]ᵀ.
Vector3 psi(const Matrix3& a);

/// Rodrigues formula I + sinθ u^× + (1 − cosθ)(u^×)².
/// Throws std::invalid_argument when ‖u‖ differs from 1 by more than 1e-9.
RotationMatrix angle_axis(double theta, const Vector3& axis);

/// Rotation angle of @p r in degrees, in [0, 180].
double geodesic_angle_deg(const RotationMatrix& r);

/// Nearest rotation in Frobenius norm (orthogonal polar factor).
/// Throws DegenerateMatrixError when det(m) <= 0 or m is not finite.
RotationMatrix project_to_so3(const Matrix3& m);

/// One classical RK4 step of Ṙ = R ω^× on the raw matrix entries with ω held
/// over the step, followed by project_to_so3().
RotationMatrix integrate_rotation_step(const RotationMatrix& r,
                                       const Vector3& body_rate, double dt);

/// Exact exponential update R exp(dt ω^×) for a constant body rate.
RotationMatrix integrate_rotation_step_exact(const RotationMatrix& r,
                                             const Vector3& body_rate,
                                             double dt);

}  // namespace hyatt

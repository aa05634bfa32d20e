#pragma once

/// @file
/// Construction of the switching-variable parameter set {Θ, k_θ, γ, u, δ} for
/// the globally stable observer from the eigenstructure of the weight matrix.

#include <numbers>
#include <string>
#include <vector>

#include "hyatt/sensing.h"
#include "hyatt/so3.h"

namespace hyatt {

/// Which closed-form rule picked the mixing coefficients.
enum class SpectrumCase {
  kRepeatedSmallest = 1,  ///< λ1 = λ2
  kWideGap = 2,           ///< λ1 < λ1λ3/(λ3−λ1) <= λ2
  kNarrowGap = 3,         ///< λ2 < λ1λ3/(λ3−λ1)
};

struct ParameterSetA {
  /// Candidate jump targets for θ; every magnitude in (0, π].
  std::vector<double> theta_set;
  double k_theta = 0.0;
  double gamma = 0.0;
  /// Unit rotation axis of R_u(θ).
  Vector3 u = Vector3::UnitZ();
  double delta = 0.0;
  /// Optimal gap min_{v ∈ E(A)} Δ(u, v) achieved by u.
  double delta_star = 0.0;
  /// max |θ'| over theta_set.
  double theta_max = 0.0;
  /// Mixing coefficients of u in the eigenbasis of A (ascending eigenvalues).
  Vector3 alpha = Vector3::Zero();
  SpectrumCase spectrum_case = SpectrumCase::kWideGap;
};

struct DesignOptions {
  double gamma_fraction = 0.5;
  double delta_fraction = 0.5;
  std::vector<double> theta_set = {std::numbers::pi / 2, -std::numbers::pi / 2,
                                   std::numbers::pi};
  double k_theta = 15.0;
  /// Case 1 only: fraction of the free mass 1 − α3² given to α1 (rest to α2).
  double repeated_split = 1.0;
};

/// Picks the spectrum case for ascending eigenvalues. Throws
/// AssumptionViolation when A is not positive definite or λ2 = λ3.
SpectrumCase classify_spectrum(const WeightMatrixAnalysis& analysis);

/// Closed-form design. Throws AssumptionViolation for unsupported spectra and
/// std::invalid_argument for fractions outside (0, 1), k_θ <= 0 or an invalid
/// Θ.
ParameterSetA design_parameters(const WeightMatrixAnalysis& analysis,
                                const DesignOptions& options = {});

/// Δ(u, v) = uᵀ(tr(A) I − A − 2 vᵀAv (I − vvᵀ)) u.
double gap_function(const Vector3& u, const Vector3& v, const Matrix3& a);

/// min of gap_function over the six unit eigenvectors ±v_k of A.
double min_gap_over_eigenvectors(const Vector3& u,
                                 const WeightMatrixAnalysis& analysis);

struct ParameterViolation {
  /// Which row of the parameter set failed: "theta_set", "k_theta", "gamma",
  /// "delta", "u" or "alpha".
  std::string field;
  std::string message;
};

/// Every violated constraint of @p params against @p analysis; empty if the
/// set is admissible.
std::vector<ParameterViolation> validate(const ParameterSetA& params,
                                         const WeightMatrixAnalysis& analysis);

}  // namespace hyatt

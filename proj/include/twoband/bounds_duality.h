#pragma once

#include <array>
#include <vector>

#include "twoband/complexity.h"
#include "twoband/models.h"
#include "twoband/quadrature.h"

namespace twoband {

/// Q_i with dC/dlambda = sum_i Q_i * integral of d(d^_i)/dlambda over the BZ:
/// (sin t cos p, sin t sin p, cos t) / 4 pi.
std::array<double, 3> reference_coefficients(const GlobalReference& ref);

/// BZ integrals of d(d^)/dlambda, componentwise, and the susceptibility
/// components at one lambda. Tolerances are relative to the size of each
/// quantity, so tiny values deep in a phase keep their digits.
struct DerivativeMoments {
  std::array<double, 3> integral{};  // integral over [-pi, pi] of d(d^_i)/dlambda
  std::array<double, 3> chi{};       // chi_F^i
  bool diverged = false;
};

DerivativeMoments derivative_moments(const TwoBandModel& model, double lambda,
                                     const BZQuadratureConfig& cfg = {});

struct BoundReport {
  double lambda = 0.0;
  /// |dC/dlambda| from the exact derivative integrals.
  double lhs = 0.0;
  /// Central4 finite difference (step 1e-5) of ground_complexity, kept as a cross-check.
  double lhs_fd = 0.0;
  /// 4 pi sum_i |Q_i| sqrt(chi_F^i).
  double rhs = 0.0;
  std::array<double, 3> q{};
  std::array<double, 3> chi{};
  /// Component with the largest |integral of d(d^_i)/dlambda|.
  int dominant = 0;
  /// lhs / rhs restricted to the dominant component; NaN when its Q_i vanishes.
  double ratio = 0.0;
  bool diverged = false;
  bool satisfied = false;
};

/// |dC/dlambda| <= 4 pi sum_i |Q_i| sqrt(chi_F^i). A diverged rhs counts as satisfied.
BoundReport bound_check(const TwoBandModel& model, const GlobalReference& ref, double lambda,
                        const BZQuadratureConfig& cfg = {});

/// R = |integral of d(d^_i)/dlambda| / sqrt(2 pi integral of (d(d^_i)/dlambda)^2) for
/// the dominant component i. UndefinedRatioError if Q_i == 0 for that
/// component or the component carries no susceptibility.
double ratio_R(const TwoBandModel& model, const GlobalReference& ref, double lambda,
               const BZQuadratureConfig& cfg = {});

struct DualityResult {
  double lhs = 0.0;
  double rhs = 0.0;
  double residual = 0.0;
};

/// lhs = chi_F^(II) at rho = 1/r, rhs = r^4 chi_F^(I) at r; relative residual.
DualityResult fs_duality_check(const DualSSHParams& params, const BZQuadratureConfig& cfg = {});

/// H(r) = (1 - r)/2 + (1 - r) sin(theta) cos(phi) K(4r / (1 + r)^2) / pi, H(1) = 0.
double duality_H(double r, const GlobalReference& ref);

/// lhs = C^(II) at rho = 1/r, rhs = [C^(I)(r) - H(r)] / r; absolute residual.
DualityResult complexity_duality_check(const DualSSHParams& params, const GlobalReference& ref,
                                       const BZQuadratureConfig& cfg = {});

struct SelfDualPoint {
  double r = 1.0;
  double c_prime = 0.0;
  double h_prime = 0.0;
  /// 2 C'(r) - H'(r).
  double lhs = 0.0;
  /// C(r).
  double rhs = 0.0;
  double residual = 0.0;
};

/// Both sides of 2 C'(1) = C(1) + H'(1) evaluated at r = 1 + eps for each eps
/// (use negative eps for the r < 1 side). C is the dual-pair complexity of
/// model I in units of params.t; derivatives are taken in r.
std::vector<SelfDualPoint> self_dual_constraint(const DualSSHParams& params,
                                                const GlobalReference& ref,
                                                const std::vector<double>& eps);

}  // namespace twoband

#pragma once

#include <Eigen/Core>
#include <complex>
#include <span>
#include <string>
#include <vector>

#include "twoband/models.h"
#include "twoband/quadrature.h"
#include "twoband/sweep.h"

namespace twoband {

using cplx = std::complex<double>;

/// Right column vector and left row vector with <left|right> = 1.
struct BiorthogonalPair {
  Eigen::Vector2cd right;
  Eigen::RowVector2cd left;
  /// The eigenvalue is -R.
  cplx R;
};

struct BiKrylovBasis {
  Eigen::Vector2cd right0;
  Eigen::Vector2cd right1;
  Eigen::RowVector2cd left0;
  Eigen::RowVector2cd left1;
};

/// sqrt(R1^2 + R3^2) on the branch with Re(-R) < 0, ties broken by Im(-R) < 0.
cplx nh_ground_branch(cplx r_squared);

/// Ground pair of h = [[R3, R1], [R1, -R3]]: right ~ (R1, -(R3 + R)), left its
/// transpose, scaled by the principal root of R1^2 + (R + R3)^2. Where that
/// vector is near self-orthogonal the equivalent (R - R3, -R1) is used.
/// ExceptionalPointError when |R^2| < 1e-20 or both forms degenerate.
BiorthogonalPair biorthogonal_ground(const Eigen::Matrix2cd& h);

/// right0 = (a, b), left0 = (a*, b*), right1 = (b*, -a*), left1 = (b, -a).
/// NormalizationError unless |a|^2 + |b|^2 = 1 within 1e-12.
BiKrylovBasis bikrylov_basis(cplx alpha, cplx beta);

/// Overlap weights w0, w1 and C_k = |w1| / (|w0| + |w1|).
struct NHModeWeights {
  cplx w0;
  cplx w1;
  double complexity;
};

/// Via the overlap products <K_i^L|psi^R><psi^L|K_i^R>. (alpha, beta) is
/// rescaled to unit norm first; C_k does not depend on the scale.
NHModeWeights nh_mode_weights(const NonHermitianSSHParams& params, double k, cplx alpha,
                              cplx beta);

double nh_complexity_per_mode(const NonHermitianSSHParams& params, double k, cplx alpha,
                              cplx beta);

/// Same value from the closed expressions in R1, R3, R.
double nh_complexity_per_mode_explicit(const NonHermitianSSHParams& params, double k, cplx alpha,
                                       cplx beta);

/// BZ average of nh_complexity_per_mode. Modes on an exceptional point are
/// evaluated at a 1e-10 offset.
double nh_ground_complexity(const NonHermitianSSHParams& params, cplx alpha, cplx beta,
                            const BZQuadratureConfig& cfg = {});

/// Lambdas where the second divided difference of `quantity` (scaled by the
/// mean spacing squared) exceeds 5x its median.
/// Adjacent flagged points (gaps of at most 2) count as one cusp located at
/// the largest second difference. Rows lacking the quantity are skipped.
/// InsufficientDataError below 20 usable rows; SpecError if unsorted.
std::vector<double> detect_cusps(std::span<const SweepRecord> sweep,
                                 const std::string& quantity = "complexity");

}  // namespace twoband

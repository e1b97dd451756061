#pragma once

#include <complex>
#include <functional>
#include <utility>

#include "twoband/models.h"

namespace twoband {

using ComplexFunction = std::function<std::complex<double>(double)>;

struct WindingResult {
  int value = 0;
  /// Accumulated phase / 2 pi before rounding.
  double raw = 0.0;
};

/// Phase of f accumulated around [-pi, pi] on a uniform grid.
///
/// GapClosedError if |f| < 1e-12 at a grid point; NonQuantizedError if the
/// raw winding is more than 0.1 from an integer.
WindingResult winding_log_derivative_detailed(const ComplexFunction& f, int grid_size = 1024);
int winding_log_derivative(const ComplexFunction& f, int grid_size = 1024);

/// Off-diagonal element d_x - i d_y of the model in its x-y frame.
/// For SSH this is t1 - t2 e^{ik}.
ComplexFunction off_diagonal(const TwoBandModel& model);

/// Winding of d^ in the x-y plane, (1/2 pi) sum of (d^ x dd^/dk)_z over a
/// periodic grid with central differences. Rotated models are mapped back
/// to the x-y frame first. Oriented like off_diagonal, so both forms agree.
double winding_cross_product(const TwoBandModel& model, int grid_size = 8192);

/// (nu_I, nu_II) for the dual pair. GapClosedError at r == 1.
std::pair<int, int> dual_windings(const DualSSHParams& params, int grid_size = 1024);

}  // namespace twoband

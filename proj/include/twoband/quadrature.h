#pragma once

#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <vector>

namespace twoband {

using RealFunction = std::function<double(double)>;

/// Tolerances and pre-split points for Brillouin-zone averages.
///
/// The tolerances apply to the *average* (1/2pi) * integral, not to the raw
/// integral. Gap closings of every model in this library sit at k = 0 or
/// k = +-pi, hence the default split points.
struct BZQuadratureConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  int max_subdivisions = 2000;
  std::vector<double> singular_points = {-std::numbers::pi, 0.0, std::numbers::pi};

  void validate() const;
};

struct QuadratureResult {
  double value = 0.0;
  double error_estimate = 0.0;
  int intervals = 0;
  /// Set when the running estimate exceeded the divergence threshold; value
  /// then holds the estimate at the moment of detection.
  bool diverged = false;
};

/// Globally adaptive 7/15-point Gauss-Kronrod integration of f over [a, b].
///
/// The interval is first split at every breakpoint strictly inside (a, b);
/// the subinterval with the largest error estimate is then bisected until
/// error <= max(abs_tol, rel_tol * |I|). Throws ConvergenceError once
/// max_subdivisions intervals are in use.
QuadratureResult integrate_adaptive(
    const RealFunction& f, double a, double b, std::span<const double> breakpoints,
    double abs_tol, double rel_tol, int max_subdivisions,
    double divergence_threshold = std::numeric_limits<double>::infinity());

/// (1/2pi) * integral of f over [-pi, pi].
QuadratureResult bz_average_detailed(
    const RealFunction& f, const BZQuadratureConfig& cfg,
    double divergence_threshold = std::numeric_limits<double>::infinity());

double bz_average(const RealFunction& f, const BZQuadratureConfig& cfg = {});

enum class FDScheme { central2, central4 };

struct FDConfig {
  double step = 1e-5;
  FDScheme scheme = FDScheme::central4;
};

/// Central finite-difference estimate of g'(at).
double param_derivative(const RealFunction& g, double at, const FDConfig& cfg = {});

}  // namespace twoband

#pragma once

#include <array>

#include "twoband/bloch.h"
#include "twoband/models.h"
#include "twoband/quadrature.h"

namespace twoband {

/// Fidelity susceptibility and its split over the Cartesian components of d^.
struct SusceptibilityBreakdown {
  double total = 0.0;
  std::array<double, 3> components{};  // x, y, z
  /// Set when the running estimate crossed the divergence threshold, i.e. the
  /// gap closes at this lambda. Values are then the estimate at detection.
  bool diverged = false;
};

inline constexpr double kChiDivergenceThreshold = 1e8;

/// d(d^)/d(lambda) = [d' - d^ (d^ . d')] / |d|. GapClosedError at |d| < 1e-13.
DVector unit_vector_derivative(const DVector& d, const DVector& d_deriv);

/// (1/4) |d(d^)/d(lambda)|^2.
double chi_F_per_mode(const DVector& d, const DVector& d_deriv);

/// (1/4) (d(d^)_i/d(lambda))^2 for i = x, y, z.
std::array<double, 3> chi_F_per_mode_components(const DVector& d, const DVector& d_deriv);

/// BZ average of the per-mode susceptibility of `model` at `lambda`.
SusceptibilityBreakdown chi_F(const TwoBandModel& model, double lambda,
                              const BZQuadratureConfig& cfg = {});

/// x-component for SSH swept in t2:
/// 3 t2^2 / (32 t1^2 (t1^2 - t2^2)) for t1 > t2, 3 t1^2 / (32 t2^2 (t2^2 - t1^2)) for t2 > t1.
/// DomainError at t1 == t2.
double chi_F_ssh_closed(const SSHParams& params);

/// Total SSH susceptibility: 1 / (8 (t1^2 - t2^2)) for t1 > t2,
/// t1^2 / (8 t2^2 (t2^2 - t1^2)) for t2 > t1. DomainError at t1 == t2.
double chi_F_ssh_total_closed(const SSHParams& params);

/// 1 / (8 |mu| (1 + mu^2)^{3/2}) in units of t (mu -> mu / t, overall 1 / t^2).
/// DomainError at mu == 0.
double chi_F_md_closed(const MassiveDiracParams& params);

/// z-component 3 / (32 |mu| (1 + mu^2)^{5/2}), same scaling.
double chi_F_md_z_closed(const MassiveDiracParams& params);

}  // namespace twoband

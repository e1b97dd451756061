#include "twoband/fidelity.h"

#include <cmath>

#include "twoband/errors.h"

namespace twoband {
namespace {

constexpr double kGapOffset = 1e-10;

void require_gapped_pair(double t1, double t2) {
  if (t1 == t2) throw DomainError("SSH susceptibility diverges at t1 == t2");
}

}  // namespace

DVector unit_vector_derivative(const DVector& d, const DVector& d_deriv) {
  const BlochVector n = d.normalized();
  const DVector nd{n.nx(), n.ny(), n.nz()};
  return (d_deriv - nd * nd.dot(d_deriv)) * (1.0 / d.magnitude());
}

double chi_F_per_mode(const DVector& d, const DVector& d_deriv) {
  const DVector u = unit_vector_derivative(d, d_deriv);
  return 0.25 * u.dot(u);
}

std::array<double, 3> chi_F_per_mode_components(const DVector& d, const DVector& d_deriv) {
  const DVector u = unit_vector_derivative(d, d_deriv);
  return {0.25 * u.x * u.x, 0.25 * u.y * u.y, 0.25 * u.z * u.z};
}

SusceptibilityBreakdown chi_F(const TwoBandModel& model, double lambda,
                              const BZQuadratureConfig& cfg) {
  auto mode = [&](double k) {
    if (model.d(k, lambda).magnitude() < kGapClosedThreshold) k += kGapOffset;
    return chi_F_per_mode_components(model.d(k, lambda), model.d_lambda(k, lambda));
  };

  SusceptibilityBreakdown out;
  for (int i = 0; i < 3; ++i) {
    QuadratureResult r;
    try {
      r = bz_average_detailed([&](double k) { return mode(k)[i]; }, cfg,
                              kChiDivergenceThreshold);
    } catch (const ConvergenceError&) {
      // A non-integrable closing can exhaust subdivisions before the
      // estimate crosses the threshold.
      out.diverged = true;
      out.components[i] = kChiDivergenceThreshold;
      continue;
    }
    out.components[i] = r.value;
    out.diverged = out.diverged || r.diverged;
  }
  out.total = out.components[0] + out.components[1] + out.components[2];
  return out;
}

double chi_F_ssh_closed(const SSHParams& params) {
  params.validate();
  const double t1 = params.t1;
  const double t2 = params.t2;
  require_gapped_pair(t1, t2);
  if (t1 > t2) return 3.0 * t2 * t2 / (32.0 * t1 * t1 * (t1 * t1 - t2 * t2));
  return 3.0 * t1 * t1 / (32.0 * t2 * t2 * (t2 * t2 - t1 * t1));
}

double chi_F_ssh_total_closed(const SSHParams& params) {
  params.validate();
  const double t1 = params.t1;
  const double t2 = params.t2;
  require_gapped_pair(t1, t2);
  if (t1 > t2) return 1.0 / (8.0 * (t1 * t1 - t2 * t2));
  return t1 * t1 / (8.0 * t2 * t2 * (t2 * t2 - t1 * t1));
}

double chi_F_md_closed(const MassiveDiracParams& params) {
  params.validate();
  if (params.mu == 0.0) throw DomainError("massive Dirac susceptibility diverges at mu == 0");
  if (params.t == 0.0) return 0.0;
  const double t = std::abs(params.t);
  const double mu = std::abs(params.mu) / t;
  return 1.0 / (8.0 * mu * std::pow(1.0 + mu * mu, 1.5) * t * t);
}

double chi_F_md_z_closed(const MassiveDiracParams& params) {
  params.validate();
  if (params.mu == 0.0) throw DomainError("massive Dirac susceptibility diverges at mu == 0");
  if (params.t == 0.0) return 0.0;
  const double t = std::abs(params.t);
  const double mu = std::abs(params.mu) / t;
  return 3.0 / (32.0 * mu * std::pow(1.0 + mu * mu, 2.5) * t * t);
}

}  // namespace twoband

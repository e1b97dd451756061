#include "twoband/bounds_duality.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "twoband/errors.h"
#include "twoband/fidelity.h"
#include "twoband/special_functions.h"

namespace twoband {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTiny = 1e-300;
constexpr double kGapOffset = 1e-10;

BZQuadratureConfig with_abs_tol(const BZQuadratureConfig& cfg, double abs_tol) {
  BZQuadratureConfig out = cfg;
  out.abs_tol = std::max(abs_tol, kTiny);
  return out;
}

int dominant_component(const std::array<double, 3>& integral) {
  int best = 0;
  for (int i = 1; i < 3; ++i) {
    if (std::abs(integral[i]) > std::abs(integral[best])) best = i;
  }
  return best;
}

double complexity_of_ratio(double t, double r, const GlobalReference& ref) {
  return ssh_complexity_closed(SSHParams{t, t * r}, ref);
}

}  // namespace

std::array<double, 3> reference_coefficients(const GlobalReference& ref) {
  const BlochVector n = ref.bloch();
  const double f = 1.0 / (4.0 * kPi);
  return {n.nx() * f, n.ny() * f, n.nz() * f};
}

DerivativeMoments derivative_moments(const TwoBandModel& model, double lambda,
                                     const BZQuadratureConfig& cfg) {
  auto unit_derivative = [&](double k) {
    if (model.d(k, lambda).magnitude() < kGapClosedThreshold) k += kGapOffset;
    return unit_vector_derivative(model.d(k, lambda), model.d_lambda(k, lambda));
  };
  auto component = [](const DVector& v, int i) { return i == 0 ? v.x : (i == 1 ? v.y : v.z); };

  DerivativeMoments out;
  const BZQuadratureConfig chi_cfg = with_abs_tol(cfg, kTiny);
  for (int i = 0; i < 3; ++i) {
    try {
      const QuadratureResult r = bz_average_detailed(
          [&](double k) {
            const double u = component(unit_derivative(k), i);
            return 0.25 * u * u;
          },
          chi_cfg, kChiDivergenceThreshold);
      out.chi[i] = r.value;
      out.diverged = out.diverged || r.diverged;
    } catch (const ConvergenceError&) {
      out.chi[i] = kChiDivergenceThreshold;
      out.diverged = true;
    }
  }
  if (out.diverged) return out;

  // |integral_i| <= 4 pi sqrt(chi_i), which sets the natural scale.
  const double chi_total = out.chi[0] + out.chi[1] + out.chi[2];
  const BZQuadratureConfig int_cfg = with_abs_tol(cfg, cfg.rel_tol * 2.0 * std::sqrt(chi_total));
  for (int i = 0; i < 3; ++i) {
    out.integral[i] =
        2.0 * kPi * bz_average([&](double k) { return component(unit_derivative(k), i); }, int_cfg);
  }
  return out;
}

BoundReport bound_check(const TwoBandModel& model, const GlobalReference& ref, double lambda,
                        const BZQuadratureConfig& cfg) {
  BoundReport rep;
  rep.lambda = lambda;
  rep.q = reference_coefficients(ref);
  const DerivativeMoments mom = derivative_moments(model, lambda, cfg);
  rep.chi = mom.chi;
  rep.diverged = mom.diverged;
  if (rep.diverged) {
    rep.rhs = std::numeric_limits<double>::infinity();
    rep.lhs = std::numeric_limits<double>::quiet_NaN();
    rep.lhs_fd = std::numeric_limits<double>::quiet_NaN();
    rep.ratio = std::numeric_limits<double>::quiet_NaN();
    rep.satisfied = true;
    return rep;
  }

  double dc = 0.0;
  for (int i = 0; i < 3; ++i) {
    dc += rep.q[i] * mom.integral[i];
    rep.rhs += 4.0 * kPi * std::abs(rep.q[i]) * std::sqrt(mom.chi[i]);
  }
  rep.lhs = std::abs(dc);

  BZQuadratureConfig fd_cfg = cfg;
  fd_cfg.abs_tol = std::min(cfg.abs_tol, 1e-13);
  fd_cfg.rel_tol = std::min(cfg.rel_tol, 1e-13);
  rep.lhs_fd = std::abs(param_derivative(
      [&](double l) { return ground_complexity(model.at(l), ref, fd_cfg); }, lambda,
      FDConfig{1e-5, FDScheme::central4}));

  rep.dominant = dominant_component(mom.integral);
  const double qd = rep.q[rep.dominant];
  const double chid = mom.chi[rep.dominant];
  rep.ratio = (qd == 0.0 || chid == 0.0)
                  ? std::numeric_limits<double>::quiet_NaN()
                  : std::abs(mom.integral[rep.dominant]) / (4.0 * kPi * std::sqrt(chid));
  rep.satisfied = rep.lhs <= rep.rhs * (1.0 + 1e-9);
  return rep;
}

double ratio_R(const TwoBandModel& model, const GlobalReference& ref, double lambda,
               const BZQuadratureConfig& cfg) {
  const DerivativeMoments mom = derivative_moments(model, lambda, cfg);
  if (mom.diverged) throw UndefinedRatioError("ratio undefined: susceptibility diverges here");
  const int i = dominant_component(mom.integral);
  if (reference_coefficients(ref)[i] == 0.0) {
    throw UndefinedRatioError("ratio undefined: reference has no weight on the active component");
  }
  if (mom.chi[i] == 0.0) throw UndefinedRatioError("ratio undefined: model does not depend on lambda");
  return std::abs(mom.integral[i]) / (4.0 * kPi * std::sqrt(mom.chi[i]));
}

DualityResult fs_duality_check(const DualSSHParams& params, const BZQuadratureConfig& cfg) {
  params.validate();
  if (params.r == 1.0) throw GapClosedError("susceptibility diverges at the self-dual point r == 1");
  const auto [first, second] = dual_pair(params);
  auto total = [&](const TwoBandModel& m, double lambda) {
    const DerivativeMoments mom = derivative_moments(m, lambda, cfg);
    if (mom.diverged) throw GapClosedError("susceptibility diverged");
    return mom.chi[0] + mom.chi[1] + mom.chi[2];
  };
  const double r = params.r;
  DualityResult out;
  out.lhs = total(second, second.lambda());
  out.rhs = r * r * r * r * total(first, first.lambda());
  out.residual = std::abs(out.lhs - out.rhs) / std::abs(out.rhs);
  return out;
}

double duality_H(double r, const GlobalReference& ref) {
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("duality_H: r must be positive");
  if (r == 1.0) return 0.0;
  const double c = (1.0 - r) / (1.0 + r);
  const double K = complete_K_from_complement(c * c);
  const BlochVector n = ref.bloch();
  return 0.5 * (1.0 - r) + (1.0 - r) * n.nx() * K / kPi;
}

DualityResult complexity_duality_check(const DualSSHParams& params, const GlobalReference& ref,
                                       const BZQuadratureConfig& cfg) {
  params.validate();
  const auto [first, second] = dual_pair(params);
  const double r = params.r;
  DualityResult out;
  out.lhs = ground_complexity(second, ref, cfg);
  out.rhs = (ground_complexity(first, ref, cfg) - duality_H(r, ref)) / r;
  out.residual = std::abs(out.lhs - out.rhs);
  return out;
}

std::vector<SelfDualPoint> self_dual_constraint(const DualSSHParams& params,
                                                const GlobalReference& ref,
                                                const std::vector<double>& eps) {
  params.validate();
  std::vector<SelfDualPoint> out;
  for (double e : eps) {
    if (e == 0.0 || !(std::abs(e) < 0.5)) {
      throw DomainError("self_dual_constraint: need 0 < |eps| < 0.5");
    }
    SelfDualPoint p;
    p.r = 1.0 + e;
    // Step well inside the distance to the log singularity at r = 1.
    const FDConfig fd{std::abs(e) * 1e-2, FDScheme::central4};
    p.c_prime = param_derivative([&](double r) { return complexity_of_ratio(params.t, r, ref); },
                                 p.r, fd);
    p.h_prime = param_derivative([&](double r) { return duality_H(r, ref); }, p.r, fd);
    p.lhs = 2.0 * p.c_prime - p.h_prime;
    p.rhs = complexity_of_ratio(params.t, p.r, ref);
    p.residual = std::abs(p.lhs - p.rhs);
    out.push_back(p);
  }
  return out;
}

}  // namespace twoband

#include "twoband/complexity.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "twoband/errors.h"
#include "twoband/special_functions.h"

namespace twoband {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr double kEndpointTolerance = 1e-12;
constexpr double kGapOffset = 1e-10;

double wrap_angle(double x) {
  double r = std::fmod(x, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

BZQuadratureConfig with_breakpoints(const BZQuadratureConfig& cfg,
                                    const std::vector<double>& extra) {
  BZQuadratureConfig out = cfg;
  for (double k : extra) {
    if (k > -kPi && k < kPi) out.singular_points.push_back(k);
  }
  return out;
}

// Integral of sqrt(1 - m sin^2 u) over [0, phi] for phi in [0, pi].
double incomplete_E_extended(double phi, EllipticModulus m) {
  if (phi <= 0.5 * kPi) return incomplete_E(std::max(phi, 0.0), m);
  return 2.0 * complete_E(m) - incomplete_E(std::max(kPi - phi, 0.0), m);
}

double ssh_energy(const SSHParams& p, double k) {
  return std::sqrt(p.t1 * p.t1 + p.t2 * p.t2 - 2.0 * p.t1 * p.t2 * std::cos(k));
}

}  // namespace

GlobalReference::GlobalReference(double theta, double phi) {
  if (!std::isfinite(theta) || !std::isfinite(phi)) {
    throw SpecError("reference angles must be finite");
  }
  double t = wrap_angle(theta);
  double p = phi;
  if (t > kPi) {
    t = kTwoPi - t;
    p += kPi;
  }
  theta_ = t;
  phi_ = wrap_angle(p);
}

std::complex<double> GlobalReference::alpha() const { return {std::cos(0.5 * theta_), 0.0}; }

std::complex<double> GlobalReference::beta() const {
  return std::polar(std::sin(0.5 * theta_), phi_);
}

double GlobalReference::re_alpha_conj_beta() const {
  return 0.5 * std::sin(theta_) * std::cos(phi_);
}

PiecewiseReference::PiecewiseReference(std::vector<ReferenceSegment> segments)
    : segments_(std::move(segments)) {
  if (segments_.empty()) throw PartitionError("piecewise reference has no segments");
  if (std::abs(segments_.front().k_lo + kPi) > kEndpointTolerance ||
      std::abs(segments_.back().k_hi - kPi) > kEndpointTolerance) {
    throw PartitionError("piecewise reference must span [-pi, pi]");
  }
  for (std::size_t i = 0; i < segments_.size(); ++i) {
    if (!(segments_[i].k_hi > segments_[i].k_lo)) {
      throw PartitionError("piecewise reference segment is empty or reversed");
    }
    if (i > 0 && std::abs(segments_[i].k_lo - segments_[i - 1].k_hi) > kEndpointTolerance) {
      throw PartitionError("piecewise reference segments overlap or leave a gap");
    }
  }
}

const BlochVector& PiecewiseReference::at(double k) const {
  for (const auto& seg : segments_) {
    if (k <= seg.k_hi) return seg.n;
  }
  return segments_.back().n;
}

std::vector<double> PiecewiseReference::breakpoints() const {
  std::vector<double> out;
  for (std::size_t i = 1; i < segments_.size(); ++i) out.push_back(segments_[i].k_lo);
  return out;
}

PiecewiseReference plateau_reference() {
  return PiecewiseReference({{-kPi, 0.0, BlochVector(0.0, 0.0, 1.0)},
                             {0.0, kPi, BlochVector(0.0, 0.0, -1.0)}});
}

void BandAssignment::validate() const {
  if (breakpoints.size() < 2) throw PartitionError("band assignment needs at least one interval");
  if (signs.size() + 1 != breakpoints.size()) {
    std::ostringstream msg;
    msg << "band assignment has " << breakpoints.size() - 1 << " intervals but "
        << signs.size() << " signs";
    throw PartitionError(msg.str());
  }
  if (std::abs(breakpoints.front() + kPi) > kEndpointTolerance ||
      std::abs(breakpoints.back() - kPi) > kEndpointTolerance) {
    throw PartitionError("band assignment must span [-pi, pi]");
  }
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i] > breakpoints[i - 1])) {
      throw PartitionError("band assignment breakpoints must be strictly increasing");
    }
  }
  for (int s : signs) {
    if (s != 1 && s != -1) throw PartitionError("band signs must be +1 or -1");
  }
}

int BandAssignment::sign_at(double k) const {
  for (std::size_t j = 0; j + 1 < breakpoints.size(); ++j) {
    if (k <= breakpoints[j + 1]) return signs[j];
  }
  return signs.back();
}

BandAssignment BandAssignment::split(double k0, int sign_left, int sign_right) {
  BandAssignment b{{-kPi, k0, kPi}, {sign_left, sign_right}};
  b.validate();
  return b;
}

double complexity_per_mode(const BlochVector& n_ref, const BlochVector& n_target) {
  return std::clamp(0.5 * (1.0 - n_ref.dot(n_target)), 0.0, 1.0);
}

BlochVector ground_state_bloch(const DVector& d) { return -d.normalized(); }

BlochVector ground_state_bloch_at(const TwoBandModel& model, double k) {
  DVector d = model.d(k);
  if (d.magnitude() < kGapClosedThreshold) d = model.d(k + kGapOffset);
  if (d.magnitude() < kGapClosedThreshold) d = model.d(k - kGapOffset);
  return ground_state_bloch(d);
}

double ground_complexity(const TwoBandModel& model, const ReferenceState& ref,
                         const BZQuadratureConfig& cfg) {
  if (const auto* global = std::get_if<GlobalReference>(&ref)) {
    const BlochVector n_ref = global->bloch();
    return bz_average(
        [&](double k) { return complexity_per_mode(n_ref, ground_state_bloch_at(model, k)); },
        cfg);
  }
  const auto& piecewise = std::get<PiecewiseReference>(ref);
  return bz_average(
      [&](double k) {
        return complexity_per_mode(piecewise.at(k), ground_state_bloch_at(model, k));
      },
      with_breakpoints(cfg, piecewise.breakpoints()));
}

double ssh_complexity_closed(const SSHParams& params, const GlobalReference& ref) {
  params.validate();
  const double t1 = params.t1;
  const double t2 = params.t2;
  const double a = ref.re_alpha_conj_beta();
  const double s = t1 + t2;
  const double delta = t1 - t2;
  if (delta == 0.0) return 0.5 + 2.0 * a / kPi;
  // 1 - m = (delta / s)^2, computed directly so the K(m) log stays accurate
  // as t2 -> t1.
  const double m1 = (delta / s) * (delta / s);
  const double K = complete_K_from_complement(m1);
  const double E = complete_E_from_complement(m1);
  return 0.5 + a * (delta * K + s * E) / (kPi * t1);
}

double ssh_dC_dt2_asymptotic(const SSHParams& params, const GlobalReference& ref) {
  params.validate();
  const double s = params.t1 + params.t2;
  const double delta = params.t1 - params.t2;
  const double ratio = std::abs(delta) / s;
  if (ratio == 0.0) throw DomainError("ssh_dC_dt2_asymptotic: undefined at t1 == t2");
  if (!(ratio < 0.1)) {
    throw DomainError("ssh_dC_dt2_asymptotic: requires |t1 - t2| / (t1 + t2) < 0.1");
  }
  const double a = ref.re_alpha_conj_beta();
  return a / (kPi * params.t1) * (2.0 - std::log(4.0 * s / std::abs(delta)) + delta / s);
}

double md_complexity_closed(const MassiveDiracParams& params, double theta) {
  params.validate();
  const double c = std::cos(theta);
  if (params.mu == 0.0) return 0.5;
  if (params.t == 0.0) return 0.5 + 0.5 * c * (params.mu > 0.0 ? 1.0 : -1.0);
  const double mu = params.mu / std::abs(params.t);
  const double root = std::sqrt(1.0 + mu * mu);
  const double K = complete_K_from_complement(mu * mu / (1.0 + mu * mu));
  return 0.5 + mu * c * K / (kPi * root);
}

double md_dC_dmu_analytic(const MassiveDiracParams& params, double theta) {
  params.validate();
  if (params.mu == 0.0) throw DomainError("md_dC_dmu_analytic: diverges at mu == 0");
  if (params.t == 0.0) return 0.0;
  const double t = std::abs(params.t);
  const double mu = params.mu / t;
  const double root = std::sqrt(1.0 + mu * mu);
  const double m1 = mu * mu / (1.0 + mu * mu);
  const double K = complete_K_from_complement(m1);
  const double E = complete_E_from_complement(m1);
  return std::cos(theta) * (K - E) / (kPi * root * t);
}

double plateau_complexity(const SSHParams& params, const BZQuadratureConfig& cfg) {
  return ground_complexity(ssh_model(params), plateau_reference(), cfg);
}

double plateau_complexity_closed(const SSHParams& params) {
  params.validate();
  const double i3 = (params.t1 + params.t2 - std::abs(params.t1 - params.t2)) / (kPi * params.t1);
  return 0.5 - 0.5 * i3;
}

double excited_piecewise_complexity(const SSHParams& params, const BandAssignment& bands,
                                    const GlobalReference& ref,
                                    const BZQuadratureConfig& cfg) {
  bands.validate();
  const TwoBandModel model = ssh_model(params);
  const BlochVector n_ref = ref.bloch();
  auto integrand = [&](double k) {
    // Upper band is -(ground state).
    const BlochVector ground = ground_state_bloch_at(model, k);
    return complexity_per_mode(n_ref, bands.sign_at(k) > 0 ? -ground : ground);
  };
  return bz_average(integrand, with_breakpoints(cfg, bands.breakpoints));
}

double ssh_I1_segment(const SSHParams& params, double a, double b,
                      const BZQuadratureConfig& cfg) {
  params.validate();
  std::vector<double> splits;
  for (double k : cfg.singular_points) {
    if (k > a && k < b) splits.push_back(k);
  }
  auto f = [&](double k) {
    const double e = ssh_energy(params, k);
    if (e < kGapClosedThreshold) return 0.0;
    return (params.t1 - params.t2 * std::cos(k)) / e;
  };
  return integrate_adaptive(f, a, b, splits, cfg.abs_tol, cfg.rel_tol, cfg.max_subdivisions)
      .value;
}

double ssh_I1_segment_elliptic(const SSHParams& params, double a, double b) {
  params.validate();
  auto arc = [&](double t1) {
    const double s = t1 + params.t2;
    const EllipticModulus m(4.0 * t1 * params.t2 / (s * s));
    return 2.0 * s *
           (incomplete_E_extended(0.5 * (kPi - a), m) - incomplete_E_extended(0.5 * (kPi - b), m));
  };
  return param_derivative(arc, params.t1, FDConfig{1e-3 * params.t1, FDScheme::central4});
}

double excited_piecewise_complexity_elliptic(const SSHParams& params,
                                             const BandAssignment& bands,
                                             const GlobalReference& ref) {
  bands.validate();
  params.validate();
  double sum1 = 0.0;
  double sum3 = 0.0;
  for (std::size_t j = 0; j + 1 < bands.breakpoints.size(); ++j) {
    const double a = bands.breakpoints[j];
    const double b = bands.breakpoints[j + 1];
    const double s = bands.signs[j];
    sum1 += s * ssh_I1_segment_elliptic(params, a, b);
    sum3 += s * (ssh_energy(params, b) - ssh_energy(params, a)) / params.t1;
  }
  const BlochVector n = ref.bloch();
  return 0.5 - (n.nx() * sum1 + n.nz() * sum3) / (4.0 * kPi);
}

}  // namespace twoband

#include "twoband/nonhermitian.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "twoband/errors.h"

namespace twoband {
namespace {

constexpr double kExceptionalThreshold = 1e-20;
constexpr double kNormTolerance = 1e-12;
constexpr double kEpOffset = 1e-10;
constexpr int kMinCuspRows = 20;
constexpr double kCuspFactor = 5.0;
constexpr int kClusterGap = 2;

std::pair<cplx, cplx> nh_components(const NonHermitianSSHParams& p, double k) {
  return {cplx(p.t1 - p.t2 * std::cos(k), 0.0), cplx(p.t2 * std::sin(k), 0.5 * p.gamma)};
}

std::pair<cplx, cplx> unit_reference(cplx alpha, cplx beta) {
  const double n = std::sqrt(std::norm(alpha) + std::norm(beta));
  if (!(n > 0.0) || !std::isfinite(n)) throw NormalizationError("reference state has zero norm");
  return {alpha / n, beta / n};
}

double weights_to_complexity(cplx w0, cplx w1) {
  const double a0 = std::abs(w0);
  const double a1 = std::abs(w1);
  if (!(a0 + a1 > 0.0)) throw ExceptionalPointError("both Krylov weights vanish");
  return a1 / (a0 + a1);
}

double median(std::vector<double> v) {
  const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
  std::nth_element(v.begin(), mid, v.end());
  if (v.size() % 2 == 1) return *mid;
  const double upper = *mid;
  const double lower = *std::max_element(v.begin(), mid);
  return 0.5 * (lower + upper);
}

}  // namespace

cplx nh_ground_branch(cplx r_squared) {
  cplx r = std::sqrt(r_squared);
  if (r.real() < 0.0 || (r.real() == 0.0 && r.imag() < 0.0)) r = -r;
  return r;
}

BiorthogonalPair biorthogonal_ground(const Eigen::Matrix2cd& h) {
  const cplx r3 = h(0, 0);
  const cplx r1 = h(0, 1);
  const cplx r_squared = r1 * r1 + r3 * r3;
  if (std::abs(r_squared) < kExceptionalThreshold) {
    throw ExceptionalPointError("R^2 vanishes: exceptional point");
  }
  const cplx R = nh_ground_branch(r_squared);

  Eigen::Vector2cd v_a(r1, -(r3 + R));
  Eigen::Vector2cd v_b(R - r3, -r1);
  const cplx n_a = r1 * r1 + (R + r3) * (R + r3);
  const cplx n_b = (R - r3) * (R - r3) + r1 * r1;
  const bool use_a = std::abs(n_a) >= std::abs(n_b);
  const cplx n = use_a ? n_a : n_b;
  const Eigen::Vector2cd& v = use_a ? v_a : v_b;
  const double scale = v.squaredNorm();
  if (!(scale > 0.0) || std::abs(n) < kExceptionalThreshold * scale) {
    throw ExceptionalPointError("ground state is self-orthogonal");
  }

  const cplx root = std::sqrt(n);
  BiorthogonalPair out;
  out.right = v / root;
  out.left = v.transpose() / root;
  out.R = R;
  return out;
}

BiKrylovBasis bikrylov_basis(cplx alpha, cplx beta) {
  const double norm = std::norm(alpha) + std::norm(beta);
  if (std::abs(norm - 1.0) > kNormTolerance) {
    std::ostringstream msg;
    msg << "reference amplitudes have |alpha|^2 + |beta|^2 = " << norm << ", expected 1";
    throw NormalizationError(msg.str());
  }
  BiKrylovBasis b;
  b.right0 << alpha, beta;
  b.left0 << std::conj(alpha), std::conj(beta);
  b.right1 << std::conj(beta), -std::conj(alpha);
  b.left1 << beta, -alpha;
  return b;
}

NHModeWeights nh_mode_weights(const NonHermitianSSHParams& params, double k, cplx alpha,
                              cplx beta) {
  const auto [a, b] = unit_reference(alpha, beta);
  const BiKrylovBasis basis = bikrylov_basis(a, b);
  const BiorthogonalPair g = biorthogonal_ground(nh_ssh_bloch_hamiltonian(params, k));
  NHModeWeights w;
  w.w0 = (basis.left0 * g.right)(0, 0) * (g.left * basis.right0)(0, 0);
  w.w1 = (basis.left1 * g.right)(0, 0) * (g.left * basis.right1)(0, 0);
  w.complexity = weights_to_complexity(w.w0, w.w1);
  return w;
}

double nh_complexity_per_mode(const NonHermitianSSHParams& params, double k, cplx alpha,
                              cplx beta) {
  return nh_mode_weights(params, k, alpha, beta).complexity;
}

double nh_complexity_per_mode_explicit(const NonHermitianSSHParams& params, double k, cplx alpha,
                                       cplx beta) {
  params.validate();
  const auto [a, b] = unit_reference(alpha, beta);
  const auto [r1, r3] = nh_components(params, k);
  const cplx r_squared = r1 * r1 + r3 * r3;
  if (std::abs(r_squared) < kExceptionalThreshold) {
    throw ExceptionalPointError("R^2 vanishes: exceptional point");
  }
  const cplx R = nh_ground_branch(r_squared);
  const cplx n = r1 * r1 + (R + r3) * (R + r3);
  if (std::abs(n) < kExceptionalThreshold) throw ExceptionalPointError("ground state is self-orthogonal");
  const cplx w0 = (a * r1 - b * (R + r3)) * (std::conj(a) * r1 - std::conj(b) * (R + r3)) / n;
  const cplx w1 = (b * r1 + a * (R + r3)) * (std::conj(b) * r1 + std::conj(a) * (R + r3)) / n;
  return weights_to_complexity(w0, w1);
}

double nh_ground_complexity(const NonHermitianSSHParams& params, cplx alpha, cplx beta,
                            const BZQuadratureConfig& cfg) {
  params.validate();
  unit_reference(alpha, beta);
  auto integrand = [&](double k) {
    try {
      return nh_complexity_per_mode(params, k, alpha, beta);
    } catch (const ExceptionalPointError&) {
      return nh_complexity_per_mode(params, k + kEpOffset, alpha, beta);
    }
  };
  return bz_average(integrand, cfg);
}

std::vector<double> detect_cusps(std::span<const SweepRecord> sweep, const std::string& quantity) {
  std::vector<double> lambda;
  std::vector<double> value;
  for (const auto& rec : sweep) {
    auto it = rec.values.find(quantity);
    if (it == rec.values.end() || !std::isfinite(it->second)) continue;
    if (!lambda.empty() && !(rec.lambda > lambda.back())) {
      throw SpecError("detect_cusps: sweep must be sorted by strictly increasing lambda");
    }
    lambda.push_back(rec.lambda);
    value.push_back(it->second);
  }
  if (static_cast<int>(lambda.size()) < kMinCuspRows) {
    std::ostringstream msg;
    msg << "detect_cusps needs at least " << kMinCuspRows << " usable rows, got " << lambda.size();
    throw InsufficientDataError(msg.str());
  }

  const std::size_t n = value.size();
  std::vector<double> d2(n, 0.0);
  std::vector<double> mags;
  double scale = 0.0;
  // Divided differences rescaled by the mean spacing, so a skipped row does
  // not read as curvature.
  const double h_mean = (lambda.back() - lambda.front()) / static_cast<double>(n - 1);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double hl = lambda[i] - lambda[i - 1];
    const double hr = lambda[i + 1] - lambda[i];
    const double curvature =
        2.0 * ((value[i + 1] - value[i]) / hr - (value[i] - value[i - 1]) / hl) / (hl + hr);
    d2[i] = std::abs(curvature) * h_mean * h_mean;
    mags.push_back(d2[i]);
    scale = std::max(scale, std::abs(value[i]));
  }
  // Second differences of a straight line are pure rounding noise.
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * std::max(scale, 1.0);
  const double threshold = std::max(kCuspFactor * median(mags), floor);

  std::vector<double> cusps;
  std::size_t best = 0;
  std::size_t last = 0;
  bool open = false;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    if (!(d2[i] > threshold)) continue;
    if (open && i - last <= static_cast<std::size_t>(kClusterGap)) {
      if (d2[i] > d2[best]) best = i;
    } else {
      if (open) cusps.push_back(lambda[best]);
      best = i;
      open = true;
    }
    last = i;
  }
  if (open) cusps.push_back(lambda[best]);
  return cusps;
}

}  // namespace twoband

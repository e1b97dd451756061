#include "twoband/models.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "twoband/errors.h"

namespace twoband {
namespace {

void require_positive(double value, const char* what) {
  if (!(value > 0.0) || !std::isfinite(value)) {
    std::ostringstream msg;
    msg << what << " must be positive and finite, got " << value;
    throw DomainError(msg.str());
  }
}

void require_non_negative(double value, const char* what) {
  if (!(value >= 0.0) || !std::isfinite(value)) {
    std::ostringstream msg;
    msg << what << " must be non-negative and finite, got " << value;
    throw DomainError(msg.str());
  }
}

void require_finite(double value, const char* what) {
  if (!std::isfinite(value)) {
    std::ostringstream msg;
    msg << what << " must be finite";
    throw DomainError(msg.str());
  }
}

// Inverse of (sx, sy, sz) -> (sx, sz, -sy) acting on coefficient vectors.
DVector rotated_to_xy(const DVector& d) { return {d.x, d.z, -d.y}; }

}  // namespace

TwoBandModel::TwoBandModel(std::string name, std::string sweep_parameter, double lambda,
                           Evaluator d, Evaluator d_lambda, Basis basis)
    : name_(std::move(name)),
      sweep_parameter_(std::move(sweep_parameter)),
      lambda_(lambda),
      d_(std::move(d)),
      d_lambda_(std::move(d_lambda)),
      basis_(basis) {}

TwoBandModel TwoBandModel::at(double lambda) const {
  TwoBandModel copy = *this;
  copy.lambda_ = lambda;
  return copy;
}

DVector TwoBandModel::d_lambda(double k, double lambda) const {
  if (d_lambda_) return d_lambda_(k, lambda);
  return d_lambda_fd(k, lambda);
}

DVector TwoBandModel::d_lambda_fd(double k, double lambda, double step) const {
  return (d_(k, lambda + step) - d_(k, lambda - step)) * (0.5 / step);
}

void SSHParams::validate() const {
  require_positive(t1, "t1");
  // t2 == 0 is the dimerized atomic limit, still gapped.
  require_non_negative(t2, "t2");
}

void DualSSHParams::validate() const {
  require_positive(t, "t");
  require_positive(r, "r");
}

void MassiveDiracParams::validate() const {
  require_finite(t, "t");
  require_finite(mu, "mu");
}

void CooperPairBoxParams::validate() const {
  require_positive(Ej, "Ej");
  require_positive(Ecc, "Ecc");
  require_finite(ng, "ng");
  require_finite(Phi_over_Phi0, "Phi_over_Phi0");
}

void NonHermitianSSHParams::validate() const {
  require_finite(t1, "t1");
  require_finite(t2, "t2");
  require_finite(gamma, "gamma");
}

TwoBandModel ssh_model(const SSHParams& params) {
  params.validate();
  const double t1 = params.t1;
  return TwoBandModel(
      "ssh", "t2", params.t2,
      [t1](double k, double t2) {
        return DVector{t1 - t2 * std::cos(k), 0.0, t2 * std::sin(k)};
      },
      [](double k, double) { return DVector{-std::cos(k), 0.0, std::sin(k)}; });
}

TwoBandModel massive_dirac_model(const MassiveDiracParams& params) {
  params.validate();
  const double t = params.t;
  return TwoBandModel(
      "massive-dirac", "mu", params.mu,
      [t](double k, double mu) { return DVector{t * std::sin(k), 0.0, mu}; },
      [](double, double) { return DVector{0.0, 0.0, 1.0}; }, Basis::xy_plane);
}

std::pair<TwoBandModel, TwoBandModel> dual_pair(const DualSSHParams& params) {
  params.validate();
  const double t = params.t;
  auto d = [t](double k, double ratio) {
    return DVector{t * (1.0 - ratio * std::cos(k)), 0.0, t * ratio * std::sin(k)};
  };
  auto d_ratio = [t](double k, double) {
    return DVector{-t * std::cos(k), 0.0, t * std::sin(k)};
  };
  return {TwoBandModel("dual-ssh-I", "r", params.r, d, d_ratio),
          TwoBandModel("dual-ssh-II", "rho", 1.0 / params.r, d, d_ratio)};
}

TwoBandModel cooper_pair_box_model(const CooperPairBoxParams& params) {
  params.validate();
  const double ej = params.Ej;
  const double ecc = params.Ecc;
  return TwoBandModel(
      "cooper-pair-box", "ng", params.ng,
      [ej, ecc](double k, double ng) {
        return DVector{-ej * std::cos(k), 0.0, 0.5 * ecc * (1.0 - 2.0 * ng)};
      },
      [ecc](double, double) { return DVector{0.0, 0.0, -ecc}; }, Basis::xy_plane);
}

DVector cooper_pair_box_d(const CooperPairBoxParams& params) {
  const TwoBandModel model = cooper_pair_box_model(params);
  return model.d(std::numbers::pi * params.Phi_over_Phi0);
}

TwoBandModel to_xy_basis(const TwoBandModel& model) {
  if (model.basis() == Basis::xy_plane) return model;
  TwoBandModel::Evaluator d = [model](double k, double lambda) {
    return rotated_to_xy(model.d(k, lambda));
  };
  TwoBandModel::Evaluator dl;
  if (model.has_analytic_derivative()) {
    dl = [model](double k, double lambda) { return rotated_to_xy(model.d_lambda(k, lambda)); };
  }
  return TwoBandModel(model.name(), model.sweep_parameter(), model.lambda(), std::move(d),
                      std::move(dl), Basis::xy_plane);
}

Eigen::Matrix2cd nh_ssh_bloch_hamiltonian(const NonHermitianSSHParams& params, double k) {
  params.validate();
  const std::complex<double> r1(params.t1 - params.t2 * std::cos(k), 0.0);
  const std::complex<double> r3(params.t2 * std::sin(k), 0.5 * params.gamma);
  Eigen::Matrix2cd h;
  h << r3, r1, r1, -r3;
  return h;
}

double periodicity_defect(const TwoBandModel& model, int grid_size) {
  double worst = 0.0;
  for (int i = 0; i < grid_size; ++i) {
    const double k = -std::numbers::pi + 2.0 * std::numbers::pi * i / grid_size;
    const DVector diff = model.d(k) - model.d(k + 2.0 * std::numbers::pi);
    worst = std::max({worst, std::abs(diff.x), std::abs(diff.y), std::abs(diff.z)});
  }
  return worst;
}

double derivative_defect(const TwoBandModel& model, int grid_size, double step) {
  double worst = 0.0;
  for (int i = 0; i < grid_size; ++i) {
    const double k = -std::numbers::pi + 2.0 * std::numbers::pi * i / grid_size;
    const DVector diff = model.d_lambda(k) - model.d_lambda_fd(k, model.lambda(), step);
    worst = std::max({worst, std::abs(diff.x), std::abs(diff.y), std::abs(diff.z)});
  }
  return worst;
}

}  // namespace twoband

#pragma once

#include <Eigen/Core>
#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <utility>

#include "twoband/bloch.h"

namespace twoband {

/// Which Pauli frame a model's d-vector is expressed in.
///
/// `rotated` is the frame after (sx, sy, sz) -> (sx, sz, -sy), where the
/// chiral models have d_y == 0. `xy_plane` is the original frame in which
/// the winding plane is x-y.
enum class Basis { rotated, xy_plane };

/// A one-parameter family k -> d(k, lambda), evaluated at a current lambda.
class TwoBandModel {
 public:
  using Evaluator = std::function<DVector(double k, double lambda)>;

  TwoBandModel(std::string name, std::string sweep_parameter, double lambda, Evaluator d,
               Evaluator d_lambda = {}, Basis basis = Basis::rotated);

  const std::string& name() const { return name_; }
  const std::string& sweep_parameter() const { return sweep_parameter_; }
  double lambda() const { return lambda_; }
  Basis basis() const { return basis_; }
  bool has_analytic_derivative() const { return static_cast<bool>(d_lambda_); }

  /// Same family, different lambda.
  TwoBandModel at(double lambda) const;

  DVector d(double k) const { return d_(k, lambda_); }
  DVector d(double k, double lambda) const { return d_(k, lambda); }

  /// d(d)/d(lambda): analytic when provided, otherwise a central difference
  /// with step 1e-6.
  DVector d_lambda(double k) const { return d_lambda(k, lambda_); }
  DVector d_lambda(double k, double lambda) const;
  DVector d_lambda_fd(double k, double lambda, double step = 1e-6) const;

 private:
  std::string name_;
  std::string sweep_parameter_;
  double lambda_;
  Evaluator d_;
  Evaluator d_lambda_;
  Basis basis_;
};

struct SSHParams {
  double t1 = 1.0;  // intracell
  double t2 = 1.0;  // intercell
  void validate() const;
};

struct DualSSHParams {
  double t = 1.0;
  double r = 1.0;
  void validate() const;
};

struct MassiveDiracParams {
  double t = 1.0;
  double mu = 0.0;
  void validate() const;
};

struct CooperPairBoxParams {
  double Ej = 1.0;
  double Ecc = 1.0;
  double ng = 0.0;
  double Phi_over_Phi0 = 0.0;
  void validate() const;
};

struct NonHermitianSSHParams {
  double t1 = 1.0;
  double t2 = 1.0;
  double gamma = 0.0;
  void validate() const;
};

/// d = (t1 - t2 cos k, 0, t2 sin k), swept in t2.
TwoBandModel ssh_model(const SSHParams& params);

/// d = (t sin k, 0, mu), swept in mu. Written directly in the x-y frame.
TwoBandModel massive_dirac_model(const MassiveDiracParams& params);

/// Model I has couplings (t, r t), swept in r; model II has couplings
/// (t, t / r), swept in its own ratio rho = 1 / r.
std::pair<TwoBandModel, TwoBandModel> dual_pair(const DualSSHParams& params);

/// Massive-Dirac form with k = pi Phi / Phi0 as the periodic variable:
/// d = (-Ej cos k, 0, Ecc (1 - 2 ng) / 2), swept in ng.
TwoBandModel cooper_pair_box_model(const CooperPairBoxParams& params);

/// d at the flux stored in params.
DVector cooper_pair_box_d(const CooperPairBoxParams& params);

/// The same family expressed in the x-y winding frame.
TwoBandModel to_xy_basis(const TwoBandModel& model);

/// h(k) = [[R3, R1], [R1, -R3]] with R1 = t1 - t2 cos k, R3 = t2 sin k + i gamma / 2.
Eigen::Matrix2cd nh_ssh_bloch_hamiltonian(const NonHermitianSSHParams& params, double k);

/// Max componentwise |d(k) - d(k + 2 pi)| over a uniform grid.
double periodicity_defect(const TwoBandModel& model, int grid_size = 128);

/// Max componentwise |analytic d_lambda - central FD of d| over a uniform grid.
double derivative_defect(const TwoBandModel& model, int grid_size = 128, double step = 1e-6);

}  // namespace twoband

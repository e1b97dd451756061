#pragma once

#include <complex>
#include <variant>
#include <vector>

#include "twoband/bloch.h"
#include "twoband/models.h"
#include "twoband/quadrature.h"

namespace twoband {

/// k-independent reference state alpha|0> + beta|1>.
///
/// Angles outside theta in [0, pi], phi in [0, 2 pi) are reduced onto that
/// range; the Bloch vector is unchanged by the reduction.
class GlobalReference {
 public:
  GlobalReference(double theta, double phi);

  double theta() const { return theta_; }
  double phi() const { return phi_; }

  /// cos(theta / 2).
  std::complex<double> alpha() const;
  /// e^{i phi} sin(theta / 2).
  std::complex<double> beta() const;
  /// Re(alpha* beta) = sin(theta) cos(phi) / 2.
  double re_alpha_conj_beta() const;

  BlochVector bloch() const { return BlochVector::from_angles(theta_, phi_); }

 private:
  double theta_;
  double phi_;
};

/// One piece of a k-dependent reference: n_ref on [k_lo, k_hi].
struct ReferenceSegment {
  double k_lo;
  double k_hi;
  BlochVector n;
};

/// k-dependent reference whose segments partition [-pi, pi].
class PiecewiseReference {
 public:
  /// PartitionError unless the segments are ordered, non-empty, contiguous
  /// and cover [-pi, pi] (endpoints matched to 1e-12).
  explicit PiecewiseReference(std::vector<ReferenceSegment> segments);

  const std::vector<ReferenceSegment>& segments() const { return segments_; }
  /// Reference at k in [-pi, pi]; at an interior breakpoint the left segment wins.
  const BlochVector& at(double k) const;
  std::vector<double> breakpoints() const;

 private:
  std::vector<ReferenceSegment> segments_;
};

using ReferenceState = std::variant<GlobalReference, PiecewiseReference>;

/// (0, 0, +1) on [-pi, 0] and (0, 0, -1) on [0, pi].
PiecewiseReference plateau_reference();

/// Band choice per k interval: s = -1 selects the ground state -d^, s = +1
/// the excited state +d^.
struct BandAssignment {
  std::vector<double> breakpoints;  // -pi = k_0 < ... < k_N = pi
  std::vector<int> signs;           // size N

  /// PartitionError on malformed input.
  void validate() const;
  int sign_at(double k) const;

  /// Two intervals split at k0.
  static BandAssignment split(double k0, int sign_left, int sign_right);
};

/// C_k = (1 - n_ref . n_target) / 2.
double complexity_per_mode(const BlochVector& n_ref, const BlochVector& n_target);

/// -d / |d|. GapClosedError when |d| < 1e-13.
BlochVector ground_state_bloch(const DVector& d);

/// Ground-state Bloch vector at k; a mode sitting exactly on a gap closing
/// is replaced by its neighbour at a 1e-10 offset.
BlochVector ground_state_bloch_at(const TwoBandModel& model, double k);

/// BZ average of the per-mode complexity of the ground state.
double ground_complexity(const TwoBandModel& model, const ReferenceState& ref,
                         const BZQuadratureConfig& cfg = {});

/// Closed form 1/2 + Re(alpha* beta) (delta K(m) + s E(m)) / (pi t1) with
/// s = t1 + t2, delta = t1 - t2, m = 4 t1 t2 / s^2. At t1 == t2 the delta K
/// term vanishes and the value is 1/2 + 2 Re(alpha* beta) / pi.
double ssh_complexity_closed(const SSHParams& params, const GlobalReference& ref);

/// Leading-log estimate of dC/dt2 near t1 == t2:
/// Re(alpha* beta) / (pi t1) * [2 - ln(4 s / |delta|) + delta / s].
/// DomainError unless 0 < |delta| / s < 0.1.
double ssh_dC_dt2_asymptotic(const SSHParams& params, const GlobalReference& ref);

/// 1/2 + mu' cos(theta) K(1 / (1 + mu'^2)) / (pi sqrt(1 + mu'^2)), mu' = mu / |t|.
double md_complexity_closed(const MassiveDiracParams& params, double theta);

/// dC/dmu = cos(theta) [K(l) - E(l)] / (pi |t| sqrt(1 + mu'^2)), l = 1 / (1 + mu'^2).
/// DomainError at mu == 0.
double md_dC_dmu_analytic(const MassiveDiracParams& params, double theta);

/// SSH ground state measured against plateau_reference().
double plateau_complexity(const SSHParams& params, const BZQuadratureConfig& cfg = {});

/// Closed value of plateau_complexity: 1/2 - (t1 + t2 - |t1 - t2|) / (2 pi t1).
double plateau_complexity_closed(const SSHParams& params);

/// SSH complexity when each k interval is filled from the band named in `bands`.
double excited_piecewise_complexity(const SSHParams& params, const BandAssignment& bands,
                                    const GlobalReference& ref,
                                    const BZQuadratureConfig& cfg = {});

/// Same quantity assembled from interval integrals:
///   1/2 - (sin(theta) cos(phi) / 4 pi) sum_j s_j I1_j - (cos(theta) / 4 pi) sum_j s_j I3_j,
/// with I3_j = (E(k_{j+1}) - E(k_j)) / t1 and I1_j from incomplete elliptic
/// integrals differentiated in t1. The overall sign follows the per-mode
/// formula with target s(k) d^.
double excited_piecewise_complexity_elliptic(const SSHParams& params,
                                             const BandAssignment& bands,
                                             const GlobalReference& ref);

/// Integral of (t1 - t2 cos k) / E_k over [a, b], E_k = |d(k)|.
double ssh_I1_segment(const SSHParams& params, double a, double b,
                      const BZQuadratureConfig& cfg = {});

/// The same integral via d/dt1 {2 (t1 + t2) [E((pi - a)/2 | m) - E((pi - b)/2 | m)]},
/// differentiated numerically in t1.
double ssh_I1_segment_elliptic(const SSHParams& params, double a, double b);

}  // namespace twoband

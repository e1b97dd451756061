#pragma once

namespace twoband {

/// Elliptic parameter m in the convention sqrt(1 - m sin^2 phi).
///
/// Values within 1e-14 outside [0, 1] are clamped onto the boundary; anything
/// further out raises DomainError. The clamp absorbs rounding in expressions
/// like 4 t1 t2 / (t1 + t2)^2 at t1 == t2.
class EllipticModulus {
 public:
  static constexpr double kClampTolerance = 1e-14;

  explicit EllipticModulus(double m);

  double value() const { return m_; }
  /// 1 - m, exact for the clamped value.
  double complement() const { return 1.0 - m_; }

 private:
  double m_;
};

/// K(m) by arithmetic-geometric mean. DomainError at m == 1.
double complete_K(EllipticModulus m);

/// E(m) by the AGM with the Legendre sum; E(1) == 1 exactly.
double complete_E(EllipticModulus m);

/// dK/dm = [E - (1 - m) K] / [2 m (1 - m)]. DomainError at m == 0 or m == 1.
double dK_dm(EllipticModulus m);

/// Integral of sqrt(1 - m sin^2 u) over [0, phi], phi in [0, pi/2].
double incomplete_E(double phi, EllipticModulus m);

/// K and E given the complementary parameter m1 = 1 - m directly. Near
/// m = 1 this keeps full relative precision in m1, which 1 - m would lose.
double complete_K_from_complement(double m1);
double complete_E_from_complement(double m1);

/// Defining integrals of K and E by adaptive quadrature. Slow; kept as the
/// reference path the AGM results are checked against.
double complete_K_by_quadrature(EllipticModulus m);
double complete_E_by_quadrature(EllipticModulus m);

}  // namespace twoband

#pragma once

// Reference computations that share no code with the library: Boost.Math
// elliptic integrals and quadrature, Eigen eigensolves, and finite-differenced
// projectors.

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/special_functions/ellint_1.hpp>
#include <boost/math/special_functions/ellint_2.hpp>
#include <cmath>
#include <complex>
#include <functional>
#include <initializer_list>
#include <numbers>
#include <vector>

namespace oracle {

inline constexpr double pi = std::numbers::pi;

// Boost uses the modulus k = sqrt(m).
inline double K(double m) { return boost::math::ellint_1(std::sqrt(m)); }
inline double E(double m) { return boost::math::ellint_2(std::sqrt(m)); }
inline double E_inc(double phi, double m) { return boost::math::ellint_2(std::sqrt(m), phi); }

inline double integrate(const std::function<double(double)>& f, std::vector<double> points,
                        double tol = 1e-14, unsigned max_depth = 30) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < points.size(); ++i) {
    sum += boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, points[i], points[i + 1],
                                                                          max_depth, tol);
  }
  return sum;
}

inline double bz_average(const std::function<double(double)>& f,
                         std::vector<double> points = {-pi, 0.0, pi}, double tol = 1e-14,
                         unsigned max_depth = 30) {
  return integrate(f, std::move(points), tol, max_depth) / (2.0 * pi);
}

using Vec3 = Eigen::Vector3d;
using Mat2 = Eigen::Matrix2cd;

inline Mat2 d_dot_sigma(const Vec3& d) {
  Mat2 m;
  m << std::complex<double>(d.z(), 0.0), std::complex<double>(d.x(), -d.y()),
      std::complex<double>(d.x(), d.y()), std::complex<double>(-d.z(), 0.0);
  return m;
}

// Lower-band projector of d . sigma by explicit diagonalisation.
inline Mat2 lower_projector(const Vec3& d) {
  Eigen::SelfAdjointEigenSolver<Mat2> es(d_dot_sigma(d));
  const Eigen::Vector2cd v = es.eigenvectors().col(0);
  return v * v.adjoint();
}

// (1/2) Tr[(dP/dlambda)^2] with P finite-differenced along d + s d'.
inline double chi_projector(const Vec3& d, const Vec3& dd, double h = 1e-5) {
  const Mat2 p = (lower_projector(d + 2 * h * dd) * -1.0 + lower_projector(d + h * dd) * 8.0 -
                  lower_projector(d - h * dd) * 8.0 + lower_projector(d - 2 * h * dd)) /
                 (12.0 * h);
  return 0.5 * (p * p).trace().real();
}

// (1/4)|d(d/|d|)/dlambda|^2 by normalising first and differencing after.
inline double chi_direct(const Vec3& d, const Vec3& dd, double h = 1e-5) {
  auto n = [&](double s) {
    const Vec3 v = d + s * dd;
    return Vec3(v / v.norm());
  };
  const Vec3 der = (-n(2 * h) + 8.0 * n(h) - 8.0 * n(-h) + n(-2 * h)) / (12.0 * h);
  return 0.25 * der.squaredNorm();
}

// Eigenvalue of the 2x2 matrix with the smallest real part, and its right and
// left eigenvectors normalised so that left * right = 1.
struct NHGround {
  std::complex<double> energy;
  Eigen::Vector2cd right;
  Eigen::RowVector2cd left;
};

inline NHGround nh_ground(const Mat2& h) {
  Eigen::ComplexEigenSolver<Mat2> er(h);
  int i = er.eigenvalues()(0).real() < er.eigenvalues()(1).real() ? 0 : 1;
  Eigen::ComplexEigenSolver<Mat2> el(h.transpose());
  int j = std::abs(el.eigenvalues()(0) - er.eigenvalues()(i)) <
                  std::abs(el.eigenvalues()(1) - er.eigenvalues()(i))
              ? 0
              : 1;
  NHGround g;
  g.energy = er.eigenvalues()(i);
  g.right = er.eigenvectors().col(i);
  g.left = el.eigenvectors().col(j).transpose();
  g.left /= (g.left * g.right)(0, 0);
  return g;
}

inline Mat2 nh_ssh(double t1, double t2, double gamma, double k) {
  const std::complex<double> r1(t1 - t2 * std::cos(k), 0.0);
  const std::complex<double> r3(t2 * std::sin(k), 0.5 * gamma);
  Mat2 h;
  h << r3, r1, r1, -r3;
  return h;
}

}  // namespace oracle

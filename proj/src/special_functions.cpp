#include "twoband/special_functions.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "twoband/errors.h"
#include "twoband/quadrature.h"

namespace twoband {
namespace {

constexpr double kHalfPi = 0.5 * std::numbers::pi;
constexpr double kAgmTolerance = 1e-15;
constexpr int kAgmMaxIterations = 64;

struct AgmResult {
  double mean;
  double legendre_sum;  // sum_n 2^(n-1) c_n^2
};

AgmResult agm(double m, double m1) {
  double a = 1.0;
  double b = std::sqrt(m1);
  double c = std::sqrt(m);
  double power = 0.5;
  double sum = power * c * c;
  for (int i = 0; i < kAgmMaxIterations; ++i) {
    if (std::abs(a - b) <= kAgmTolerance * a) break;
    const double next_a = 0.5 * (a + b);
    const double next_b = std::sqrt(a * b);
    c = 0.5 * (a - b);
    a = next_a;
    b = next_b;
    power *= 2.0;
    sum += power * c * c;
  }
  return {0.5 * (a + b), sum};
}

}  // namespace

EllipticModulus::EllipticModulus(double m) : m_(m) {
  if (!std::isfinite(m) || m < -kClampTolerance || m > 1.0 + kClampTolerance) {
    std::ostringstream msg;
    msg << "elliptic parameter m = " << m << " outside [0, 1]";
    throw DomainError(msg.str());
  }
  if (m_ < 0.0) m_ = 0.0;
  if (m_ > 1.0) m_ = 1.0;
}

double complete_K(EllipticModulus m) {
  if (m.value() >= 1.0) {
    throw DomainError("complete_K: logarithmic singularity at m = 1");
  }
  return kHalfPi / agm(m.value(), m.complement()).mean;
}

double complete_E(EllipticModulus m) {
  if (m.value() >= 1.0) return 1.0;
  const AgmResult r = agm(m.value(), m.complement());
  return kHalfPi / r.mean * (1.0 - r.legendre_sum);
}

double complete_K_from_complement(double m1) {
  if (!(m1 > 0.0) || m1 > 1.0 + EllipticModulus::kClampTolerance) {
    throw DomainError("complete_K_from_complement: need 0 < 1 - m <= 1");
  }
  m1 = std::min(m1, 1.0);
  return kHalfPi / agm(1.0 - m1, m1).mean;
}

double complete_E_from_complement(double m1) {
  if (!(m1 >= 0.0) || m1 > 1.0 + EllipticModulus::kClampTolerance) {
    throw DomainError("complete_E_from_complement: need 0 <= 1 - m <= 1");
  }
  if (m1 == 0.0) return 1.0;
  m1 = std::min(m1, 1.0);
  const AgmResult r = agm(1.0 - m1, m1);
  return kHalfPi / r.mean * (1.0 - r.legendre_sum);
}

double dK_dm(EllipticModulus m) {
  const double x = m.value();
  if (x <= 0.0 || x >= 1.0) {
    throw DomainError("dK_dm: undefined at m = 0 and m = 1");
  }
  return (complete_E(m) - (1.0 - x) * complete_K(m)) / (2.0 * x * (1.0 - x));
}

double incomplete_E(double phi, EllipticModulus m) {
  if (!(phi >= 0.0 && phi <= kHalfPi)) {
    std::ostringstream msg;
    msg << "incomplete_E: amplitude " << phi << " outside [0, pi/2]";
    throw DomainError(msg.str());
  }
  if (phi == 0.0) return 0.0;
  const double x = m.value();
  const auto integrand = [x](double u) {
    const double s = std::sin(u);
    return std::sqrt(std::max(0.0, 1.0 - x * s * s));
  };
  return integrate_adaptive(integrand, 0.0, phi, {}, 1e-13, 1e-14, 2000).value;
}

double complete_K_by_quadrature(EllipticModulus m) {
  if (m.value() >= 1.0) {
    throw DomainError("complete_K: logarithmic singularity at m = 1");
  }
  const double x = m.value();
  const auto integrand = [x](double u) {
    const double s = std::sin(u);
    return 1.0 / std::sqrt(1.0 - x * s * s);
  };
  // Endpoint peak at u = pi/2 as m -> 1; pre-split near it.
  const std::array<double, 3> splits = {kHalfPi * 0.9, kHalfPi * 0.99, kHalfPi * 0.999};
  return integrate_adaptive(integrand, 0.0, kHalfPi, splits, 1e-13, 1e-13, 20000).value;
}

double complete_E_by_quadrature(EllipticModulus m) {
  const double x = m.value();
  const auto integrand = [x](double u) {
    const double s = std::sin(u);
    return std::sqrt(std::max(0.0, 1.0 - x * s * s));
  };
  return integrate_adaptive(integrand, 0.0, kHalfPi, {}, 1e-13, 1e-13, 20000).value;
}

}  // namespace twoband

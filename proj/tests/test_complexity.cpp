#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.h"
#include "twoband/complexity.h"
#include "twoband/errors.h"

using namespace twoband;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;

// Reference complexity of the SSH ground state by direct BZ integration.
double ssh_oracle(double t1, double t2, double theta, double phi) {
  const double a = std::sin(theta) * std::cos(phi), c = std::cos(theta);
  return oracle::bz_average([&](double k) {
    const double dx = t1 - t2 * std::cos(k), dz = t2 * std::sin(k);
    const double e = std::hypot(dx, dz);
    return 0.5 * (1.0 + (a * dx + c * dz) / e);
  });
}
}  // namespace

TEST_CASE("per_mode_complexity") {
  const BlochVector up(0, 0, 1);
  CHECK(complexity_per_mode(up, up) == 0.0);
  CHECK(complexity_per_mode(up, -up) == 1.0);
  CHECK(complexity_per_mode(up, BlochVector(1, 0, 0)) == Approx(0.5));
  CHECK(ground_state_bloch({0, 0, 2}).nz() == -1.0);
  CHECK_THROWS_AS(ground_state_bloch({0, 0, 0}), GapClosedError);
}

TEST_CASE("global_reference_angles") {
  const GlobalReference r(kPi / 3, kPi / 4);
  CHECK(std::norm(r.alpha()) + std::norm(r.beta()) == Approx(1.0));
  CHECK(r.re_alpha_conj_beta() == Approx(std::sin(kPi / 3) * std::cos(kPi / 4) / 2));
  // Reduction keeps the Bloch vector.
  const GlobalReference s(-kPi / 3, kPi / 4 + kPi);
  CHECK(s.theta() >= 0.0);
  CHECK(s.bloch().dot(r.bloch()) == Approx(1.0));
  const GlobalReference w(kPi / 2, 9.0);
  CHECK(w.phi() < 2 * kPi);
}

TEST_CASE("ssh_closed_form_frozen_value") {
  const GlobalReference ref(kPi / 2, kPi);
  CHECK(std::abs(ssh_complexity_closed({1.0, 2.0}, ref) - 0.37067104769432917) < 1e-12);
  CHECK(std::abs(ground_complexity(ssh_model({1.0, 2.0}), ref) - 0.37067104769432917) < 1e-9);
  CHECK(std::abs(ssh_complexity_closed({1.0, 1.0}, ref) - (0.5 - 1.0 / kPi)) < 1e-14);
}

TEST_CASE("ssh_closed_form_matches_quadrature") {
  for (double t2 : {0.0, 0.3, 0.95, 1.05, 2.0, 5.0}) {
    for (auto [th, ph] : {std::pair{0.0, 0.0}, {kPi / 2, 0.0}, {1.1, 2.3}, {2.5, 4.0}}) {
      CAPTURE(t2);
      CAPTURE(th);
      const GlobalReference ref(th, ph);
      const double closed = ssh_complexity_closed({1.0, t2}, ref);
      CHECK(std::abs(closed - ssh_oracle(1.0, t2, th, ph)) < 1e-8);
      CHECK(std::abs(closed - ground_complexity(ssh_model({1.0, t2}), ref)) < 1e-8);
    }
  }
}

TEST_CASE("ssh_closed_form_continuous_at_criticality") {
  const GlobalReference ref(kPi / 2, kPi);
  const double at = ssh_complexity_closed({1.0, 1.0}, ref);
  CHECK(std::abs(ssh_complexity_closed({1.0, 1.0 + 1e-9}, ref) - at) < 1e-7);
  CHECK(std::abs(ssh_complexity_closed({1.0, 1.0 - 1e-9}, ref) - at) < 1e-7);
}

TEST_CASE("ssh_asymptotic_slope") {
  const GlobalReference ref(kPi / 2, kPi);
  for (double delta : {1e-3, 1e-4}) {
    const SSHParams p{1.0, 1.0 - delta};
    const double fd = param_derivative(
        [&](double t2) { return ssh_complexity_closed({1.0, t2}, ref); }, p.t2, {delta * 1e-3, FDScheme::central4});
    CHECK(std::abs(ssh_dC_dt2_asymptotic(p, ref) - fd) < 5e-2 * std::abs(fd));
  }
  CHECK_THROWS_AS(ssh_dC_dt2_asymptotic({1.0, 1.0}, ref), DomainError);
  CHECK_THROWS_AS(ssh_dC_dt2_asymptotic({1.0, 0.5}, ref), DomainError);
}

TEST_CASE("massive_dirac_closed_forms") {
  CHECK(std::abs(md_complexity_closed({1.0, 1.0}, 0.0) - 0.91731342083703659) < 1e-12);
  CHECK(std::abs(md_dC_dmu_analytic({1.0, 1.0}, 0.0) - 0.11331173998079165) < 1e-12);
  CHECK(std::abs(md_dC_dmu_analytic({1.0, 0.01}, 0.0) - 1.5887213175389633) < 1e-10);
  CHECK(md_complexity_closed({1.0, 0.0}, 0.4) == Approx(0.5));
  // t == 0 leaves a k-independent ground state.
  CHECK(md_complexity_closed({0.0, 2.0}, 0.4) == Approx(0.5 + std::cos(0.4) / 2));
  CHECK(md_complexity_closed({0.0, -2.0}, 0.4) == Approx(0.5 - std::cos(0.4) / 2));
  CHECK_THROWS_AS(md_dC_dmu_analytic({1.0, 0.0}, 0.0), DomainError);
  for (double mu : {-2.0, -0.3, 0.2, 1.7}) {
    const double direct = oracle::bz_average([&](double k) {
      const double e = std::hypot(std::sin(k), mu);
      return 0.5 * (1.0 + mu / e);
    });
    CHECK(std::abs(md_complexity_closed({1.0, mu}, 0.0) - direct) < 1e-10);
    CHECK(std::abs(ground_complexity(massive_dirac_model({1.0, mu}), GlobalReference(0.0, 0.0)) - direct) < 1e-9);
  }
}

TEST_CASE("massive_dirac_log_asymptote") {
  // dC/dmu ~ (ln(4 / |mu|) - 1) / pi for small mu.
  const double mu = 0.01;
  CHECK(std::abs(md_dC_dmu_analytic({1.0, mu}, 0.0) / ((std::log(4.0 / mu) - 1.0) / kPi) - 1.0) < 0.02);
}

TEST_CASE("piecewise_reference_validation") {
  const BlochVector up(0, 0, 1);
  CHECK_THROWS_AS(PiecewiseReference({}), PartitionError);
  CHECK_THROWS_AS(PiecewiseReference({{-kPi, 0.0, up}, {0.1, kPi, up}}), PartitionError);
  CHECK_THROWS_AS(PiecewiseReference({{-kPi, 0.0, up}, {0.0, 3.0, up}}), PartitionError);
  CHECK_THROWS_AS(PiecewiseReference({{0.0, kPi, up}, {-kPi, 0.0, up}}), PartitionError);
  CHECK_THROWS_AS(PiecewiseReference({{-kPi, -kPi, up}, {-kPi, kPi, up}}), PartitionError);
  const auto p = plateau_reference();
  CHECK(p.at(-1.0).nz() == 1.0);
  CHECK(p.at(0.0).nz() == 1.0);
  CHECK(p.at(1.0).nz() == -1.0);
  REQUIRE(p.breakpoints().size() == 1);
  CHECK(p.breakpoints()[0] == 0.0);
}

TEST_CASE("plateau_values") {
  CHECK(std::abs(plateau_complexity_closed({1.0, 2.0}) - (0.5 - 1.0 / kPi)) < 1e-15);
  CHECK(std::abs(plateau_complexity_closed({1.0, 0.5}) - (0.5 - 0.5 / kPi)) < 1e-15);
  for (double t2 : {0.2, 0.8, 1.3, 2.0, 4.0}) {
    CHECK(std::abs(plateau_complexity({1.0, t2}) - plateau_complexity_closed({1.0, t2})) < 1e-8);
  }
  // Flat throughout the topological phase.
  CHECK(std::abs(plateau_complexity({1.0, 1.5}) - plateau_complexity({1.0, 3.5})) < 1e-8);
}

TEST_CASE("band_assignment") {
  auto b = BandAssignment::split(0.0, -1, 1);
  CHECK_NOTHROW(b.validate());
  CHECK(b.sign_at(-1.0) == -1);
  CHECK(b.sign_at(1.0) == 1);
  BandAssignment bad{{-kPi, kPi}, {2}};
  CHECK_THROWS_AS(bad.validate(), PartitionError);
  BandAssignment gap{{-kPi, 1.0, kPi}, {-1}};
  CHECK_THROWS_AS(gap.validate(), PartitionError);
}

TEST_CASE("excited_piecewise_frozen_value") {
  const SSHParams p{1.0, 0.5};
  const GlobalReference ref(kPi / 6, 0.0);
  const auto bands = BandAssignment::split(0.0, -1, 1);
  const double expected = 0.36216777614455199;
  CHECK(std::abs(excited_piecewise_complexity(p, bands, ref) - expected) < 1e-9);
  CHECK(std::abs(excited_piecewise_complexity_elliptic(p, bands, ref) - expected) < 1e-8);
  // The same number from 1/2 + cos(theta) (|t1 - t2| - (t1 + t2)) / (2 pi t1).
  CHECK(std::abs(0.5 + std::cos(kPi / 6) * (0.5 - 1.5) / (2 * kPi) - expected) < 1e-15);
}

TEST_CASE("excited_elliptic_path_matches_quadrature_in_general") {
  for (double k0 : {-2.0, -0.5, 0.7, 2.8}) {
    for (double t2 : {0.4, 1.7}) {
      const SSHParams p{1.0, t2};
      const GlobalReference ref(1.0, 0.6);
      const auto bands = BandAssignment::split(k0, 1, -1);
      CAPTURE(k0);
      CAPTURE(t2);
      CHECK(std::abs(excited_piecewise_complexity(p, bands, ref) -
                     excited_piecewise_complexity_elliptic(p, bands, ref)) < 1e-7);
    }
  }
  // All ground state reproduces the ground complexity.
  const BandAssignment all{{-kPi, kPi}, {-1}};
  const GlobalReference ref(1.0, 0.6);
  CHECK(std::abs(excited_piecewise_complexity({1.0, 0.4}, all, ref) - ssh_complexity_closed({1.0, 0.4}, ref)) < 1e-9);
}

TEST_CASE("I1_segment_paths_agree") {
  for (auto [a, b] : {std::pair{-kPi, 0.0}, {0.0, kPi}, {-1.0, 2.5}, {0.3, 0.4}}) {
    const SSHParams p{1.0, 0.6};
    const double direct = oracle::integrate(
        [&](double k) { return (1.0 - 0.6 * std::cos(k)) / std::sqrt(1.36 - 1.2 * std::cos(k)); }, {a, b});
    CHECK(std::abs(ssh_I1_segment(p, a, b) - direct) < 1e-9);
    CHECK(std::abs(ssh_I1_segment_elliptic(p, a, b) - direct) < 1e-7);
  }
}

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "oracles.h"
#include "twoband/errors.h"
#include "twoband/fidelity.h"

using namespace twoband;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;

oracle::Vec3 v3(const DVector& d) { return {d.x, d.y, d.z}; }

double oracle_chi(const TwoBandModel& m, std::vector<double> points = {-kPi, 0.0, kPi}) {
  return oracle::bz_average([&](double k) { return oracle::chi_projector(v3(m.d(k)), v3(m.d_lambda(k))); },
                            std::move(points), 1e-9, 15);
}
}  // namespace

TEST_CASE("per_mode_formula_projector_and_direct_oracles_agree") {
  const DVector ds[] = {{1.0, 0.2, -0.5}, {0.0, 0.0, 2.0}, {-3.0, 1.0, 0.1}};
  const DVector dds[] = {{0.3, -1.0, 0.7}, {1.0, 0.0, 0.0}, {0.0, 0.0, 5.0}};
  for (const auto& d : ds) {
    for (const auto& dd : dds) {
      const double f = chi_F_per_mode(d, dd);
      CHECK(std::abs(f - oracle::chi_projector(v3(d), v3(dd))) < 1e-8 * std::max(1.0, f));
      CHECK(std::abs(f - oracle::chi_direct(v3(d), v3(dd))) < 1e-8 * std::max(1.0, f));
      const auto c = chi_F_per_mode_components(d, dd);
      CHECK(c[0] + c[1] + c[2] == Approx(f).epsilon(1e-13));
    }
  }
}

TEST_CASE("unit_vector_derivative_is_tangent") {
  const DVector d{1.0, -2.0, 0.5};
  const DVector dd{0.3, 0.1, -4.0};
  const DVector u = unit_vector_derivative(d, dd);
  CHECK(std::abs(u.dot(d)) < 1e-14);
  // Parallel change of d leaves d^ alone.
  const DVector par = unit_vector_derivative(d, d * 3.0);
  CHECK(par.magnitude() < 1e-14);
  CHECK_THROWS_AS(unit_vector_derivative({0, 0, 0}, dd), GapClosedError);
}

TEST_CASE("ssh_closed_forms") {
  for (double t2 : {0.2, 0.6, 1.6, 3.0}) {
    CAPTURE(t2);
    const auto m = ssh_model({1.0, t2});
    const auto r = chi_F(m, t2);
    CHECK_FALSE(r.diverged);
    CHECK(r.total == Approx(chi_F_ssh_total_closed({1.0, t2})).epsilon(1e-8));
    CHECK(r.components[0] == Approx(chi_F_ssh_closed({1.0, t2})).epsilon(1e-8));
    CHECK(r.total == Approx(oracle_chi(m)).epsilon(1e-6));
    CHECK(r.components[1] == 0.0);
  }
  CHECK(chi_F_ssh_total_closed({1.0, 0.5}) == Approx(1.0 / 6.0));
  CHECK(chi_F_ssh_total_closed({1.0, 2.0}) == Approx(1.0 / 96.0));
  CHECK_THROWS_AS(chi_F_ssh_closed({1.0, 1.0}), DomainError);
  CHECK_THROWS_AS(chi_F_ssh_total_closed({1.0, 1.0}), DomainError);
}

TEST_CASE("massive_dirac_closed_forms") {
  for (double mu : {-1.5, 0.05, 0.4, 2.0}) {
    CAPTURE(mu);
    const auto m = massive_dirac_model({1.0, mu});
    const auto r = chi_F(m, mu);
    CHECK(r.total == Approx(chi_F_md_closed({1.0, mu})).epsilon(1e-8));
    CHECK(r.components[2] == Approx(chi_F_md_z_closed({1.0, mu})).epsilon(1e-8));
    CHECK(r.total == Approx(oracle_chi(m)).epsilon(1e-6));
  }
  // Frozen near the gap closing: 1 / (8 |mu|) up to (1 + mu^2)^{-3/2}.
  CHECK(chi_F_md_closed({1.0, 0.01}) == Approx(12.498125234347659).epsilon(1e-12));
  CHECK(chi_F(massive_dirac_model({1.0, 0.01}), 0.01).total == Approx(12.498125234347659).epsilon(1e-8));
  // Scaling with t.
  CHECK(chi_F_md_closed({2.0, 1.0}) == Approx(chi_F_md_closed({1.0, 0.5}) / 4.0));
  CHECK_THROWS_AS(chi_F_md_closed({1.0, 0.0}), DomainError);
}

TEST_CASE("divergence_is_flagged_at_the_gap_closing") {
  const auto r = chi_F(ssh_model({1.0, 1.0}), 1.0);
  CHECK(r.diverged);
  const auto md = chi_F(massive_dirac_model({1.0, 0.0}), 0.0);
  CHECK(md.diverged);
}

TEST_CASE("cooper_pair_box_susceptibility") {
  const CooperPairBoxParams p{1.0, 2.0, 0.3, 0.0};
  const auto m = cooper_pair_box_model(p);
  CHECK(chi_F(m, 0.3).total == Approx(oracle_chi(m)).epsilon(1e-6));
}

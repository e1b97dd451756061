#include "twoband/verify.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>

#include "twoband/bounds_duality.h"
#include "twoband/complexity.h"
#include "twoband/errors.h"
#include "twoband/fidelity.h"
#include "twoband/nonhermitian.h"
#include "twoband/special_functions.h"
#include "twoband/sweep.h"
#include "twoband/topology.h"

namespace twoband {
namespace {

constexpr double kPi = std::numbers::pi;

class Suite {
 public:
  explicit Suite(std::string name) { report_.suite = std::move(name); }

  void at_most(const std::string& name, double measured, double tolerance,
               std::string note = {}) {
    report_.checks.push_back({name, measured, tolerance,
                              std::isfinite(measured) && measured <= tolerance, std::move(note)});
  }

  // Runs `body`; a thrown NumericalError becomes a failed check.
  void guarded(const std::string& name, const std::function<void()>& body) {
    try {
      body();
    } catch (const std::exception& e) {
      report_.checks.push_back({name, NAN, 0.0, false, e.what()});
    }
  }

  SuiteReport take() { return std::move(report_); }

 private:
  SuiteReport report_;
};

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

SuiteReport special_functions_suite() {
  Suite s("special-functions");
  s.at_most("K(0) = pi/2", std::abs(complete_K(EllipticModulus(0.0)) - kPi / 2), 1e-15);
  s.at_most("E(1) = 1", std::abs(complete_E(EllipticModulus(1.0)) - 1.0), 0.0);
  s.at_most("K(0.5) vs defining integral",
            rel(complete_K(EllipticModulus(0.5)), complete_K_by_quadrature(EllipticModulus(0.5))), 1e-10);
  s.at_most("E(0.3) vs defining integral",
            rel(complete_E(EllipticModulus(0.3)), complete_E_by_quadrature(EllipticModulus(0.3))), 1e-10);
  {
    const double fd = param_derivative([](double m) { return complete_K(EllipticModulus(m)); }, 0.5,
                                       FDConfig{1e-4, FDScheme::central4});
    s.at_most("dK/dm(0.5) vs finite difference", rel(dK_dm(EllipticModulus(0.5)), fd), 1e-8);
  }
  {
    const double mp = 1e-8;
    s.at_most("K(1 - 1e-8) log asymptote",
              rel(complete_K(EllipticModulus(1.0 - mp)), 0.5 * std::log(16.0 / mp)), 1e-4);
  }
  s.at_most("incomplete_E(pi/2, 0.4) = E(0.4)",
            std::abs(incomplete_E(kPi / 2, EllipticModulus(0.4)) - complete_E(EllipticModulus(0.4))),
            1e-12);
  {
    double worst = 0.0;
    for (int i = 1; i < 100; ++i) {
      const EllipticModulus m(i / 100.0);
      worst = std::max(worst, complete_E(m) - kPi / 2);
      worst = std::max(worst, kPi / 2 - complete_K(m));
    }
    s.at_most("E(m) < pi/2 < K(m) on (0, 1)", worst, 0.0);
  }
  return s.take();
}

SuiteReport closed_forms_suite() {
  Suite s("closed-forms");
  BZQuadratureConfig tight;
  tight.abs_tol = 1e-12;
  tight.rel_tol = 1e-12;
  s.guarded("SSH closed form vs quadrature", [&] {
    const std::vector<GlobalReference> refs = {{kPi / 2, kPi}, {kPi / 3, 0.4}, {2.0, 4.0}};
    double worst = 0.0;
    for (int i = 0; i < 6; ++i) {
      for (int j = 0; j < 6; ++j) {
        const SSHParams p{0.5 + 0.5 * i, 0.55 + 0.5 * j};
        for (const auto& ref : refs) {
          worst = std::max(worst, std::abs(ssh_complexity_closed(p, ref) -
                                           ground_complexity(ssh_model(p), ref, tight)));
        }
      }
    }
    s.at_most("SSH closed form vs quadrature", worst, 1e-8);
  });
  s.guarded("massive Dirac closed form vs quadrature", [&] {
    double worst = 0.0;
    for (double mu : {0.01, 0.1, 0.5, 1.0, 2.0, 10.0}) {
      for (double theta : {0.0, kPi / 4, kPi / 3}) {
        worst = std::max(worst, std::abs(md_complexity_closed({1.0, mu}, theta) -
                                         ground_complexity(massive_dirac_model({1.0, mu}),
                                                           GlobalReference(theta, 0.0), tight)));
      }
    }
    s.at_most("massive Dirac closed form vs quadrature", worst, 1e-8);
  });
  s.guarded("susceptibility closed forms", [&] {
    double worst = 0.0;
    for (double mu : {0.01, 0.1, 0.5, 1.0, 2.0, 10.0}) {
      const DerivativeMoments m = derivative_moments(massive_dirac_model({1.0, mu}), mu, tight);
      worst = std::max(worst, rel(m.chi[0] + m.chi[1] + m.chi[2], chi_F_md_closed({1.0, mu})));
    }
    for (double t2 : {0.3, 0.7, 1.5, 3.0}) {
      const DerivativeMoments m = derivative_moments(ssh_model({1.0, t2}), t2, tight);
      worst = std::max(worst, rel(m.chi[0], chi_F_ssh_closed({1.0, t2})));
    }
    s.at_most("susceptibility closed forms (relative)", worst, 1e-6);
  });
  s.guarded("plateau reference", [&] {
    double worst = 0.0;
    for (double t2 : {0.25, 0.5, 0.75, 1.5, 2.0, 3.0}) {
      worst = std::max(worst, std::abs(plateau_complexity({1.0, t2}, tight) -
                                       plateau_complexity_closed({1.0, t2})));
    }
    s.at_most("plateau reference vs 1/2 - I3/2", worst, 1e-8);
  });
  s.guarded("excited piecewise k0 = 0", [&] {
    const GlobalReference ref(kPi / 6, kPi / 3);
    double worst = 0.0;
    for (double t2 : {0.4, 0.8, 1.6, 2.5}) {
      const double closed =
          0.5 + std::cos(ref.theta()) / (2.0 * kPi) * (std::abs(1.0 - t2) - (1.0 + t2));
      worst = std::max(worst, std::abs(excited_piecewise_complexity(
                                           {1.0, t2}, BandAssignment::split(0.0, -1, 1), ref, tight) -
                                       closed));
    }
    s.at_most("excited piecewise k0 = 0 closed form", worst, 1e-8,
              "band signs (-1 for k <= 0, +1 for k > 0)");
  });
  return s.take();
}

SuiteReport duality_suite() {
  Suite s("duality");
  BZQuadratureConfig tight;
  tight.abs_tol = 1e-12;
  tight.rel_tol = 1e-12;
  const GlobalReference ref(kPi / 2, kPi);
  s.guarded("susceptibility duality", [&] {
    double worst = 0.0;
    for (double r : {0.2, 0.5, 2.0, 5.0}) worst = std::max(worst, fs_duality_check({1.0, r}, tight).residual);
    s.at_most("susceptibility duality (relative)", worst, 1e-6);
  });
  s.guarded("complexity duality", [&] {
    double worst = 0.0;
    for (double r : {0.2, 0.5, 2.0, 5.0}) {
      worst = std::max(worst, complexity_duality_check({1.0, r}, ref, tight).residual);
    }
    s.at_most("complexity duality", worst, 1e-7);
  });
  s.at_most("H(1) = 0", std::abs(duality_H(1.0, ref)), 0.0);
  s.guarded("self-dual constraint", [&] {
    const auto pts = self_dual_constraint({1.0, 1.0}, ref, {1e-2, 1e-3, 1e-4});
    const bool decreasing = pts[1].residual < pts[0].residual && pts[2].residual < pts[1].residual;
    s.at_most("self-dual residual shrinks with eps", decreasing ? pts[2].residual : NAN, pts[0].residual);
  });
  s.guarded("ratio symmetry", [&] {
    double worst = 0.0;
    for (double r : {1.5, 3.0, 10.0}) {
      worst = std::max(worst, std::abs(ratio_R(ssh_model({1.0, r}), ref, r, tight) -
                                       ratio_R(ssh_model({1.0, 1.0 / r}), ref, 1.0 / r, tight)));
    }
    s.at_most("R(r) = R(1/r)", worst, 1e-8);
  });
  return s.take();
}

SuiteReport bound_suite() {
  Suite s("bound");
  const GlobalReference ssh_ref(kPi / 2, kPi);
  const GlobalReference md_ref(0.0, 0.0);
  s.guarded("bound across SSH and massive Dirac sweeps", [&] {
    int violations = 0;
    for (int i = 0; i < 20; ++i) {
      const double t2 = 0.1 + 0.2 * i + (i >= 5 ? 0.05 : 0.0);  // skip t2 = 1
      if (!bound_check(ssh_model({1.0, t2}), ssh_ref, t2).satisfied) ++violations;
      const double mu = -2.0 + 0.2 * i + 0.1;
      if (!bound_check(massive_dirac_model({1.0, mu}), md_ref, mu).satisfied) ++violations;
    }
    s.at_most("bound violations over 40 points", violations, 0.0);
  });
  s.guarded("ratio saturation", [&] {
    const double target = std::sqrt(2.0 / 3.0);
    const double a = std::abs(ratio_R(ssh_model({1.0, 50.0}), ssh_ref, 50.0) - target);
    const double b = std::abs(ratio_R(massive_dirac_model({1.0, 50.0}), md_ref, 50.0) - target);
    s.at_most("R(50) - sqrt(2/3)", std::max(a, b), 1e-3);
  });
  return s.take();
}

SuiteReport winding_suite() {
  Suite s("winding");
  s.guarded("SSH windings", [&] {
    const int trivial = winding_log_derivative(off_diagonal(ssh_model({2.0, 1.0})));
    const int topological = winding_log_derivative(off_diagonal(ssh_model({1.0, 2.0})));
    s.at_most("SSH winding (t1 > t2, t1 < t2) = (0, 1)",
              std::abs(trivial - 0) + std::abs(topological - 1), 0.0);
  });
  s.guarded("massive Dirac cross-product winding", [&] {
    double worst = 0.0;
    for (double mu : {-3.0, -0.5, 0.5, 3.0}) {
      worst = std::max(worst, std::abs(winding_cross_product(massive_dirac_model({1.0, mu}))));
    }
    s.at_most("massive Dirac cross-product winding", worst, 1e-10);
  });
  s.guarded("cross-product agrees with log-derivative", [&] {
    s.at_most("SSH cross-product winding at t2 = 2",
              std::abs(winding_cross_product(ssh_model({1.0, 2.0})) - 1.0), 1e-6);
  });
  s.guarded("dual windings", [&] {
    int bad = 0;
    for (double r : {0.3, 0.5, 0.7, 1.5, 2.0, 3.0}) {
      const auto [a, b] = dual_windings({1.0, r});
      if (a + b != 1 || a != (r > 1.0 ? 1 : 0)) ++bad;
    }
    s.at_most("dual windings (nu_I, nu_II) with sum 1", bad, 0.0);
  });
  return s.take();
}

SuiteReport nonhermitian_suite() {
  Suite s("nonhermitian");
  s.guarded("biorthonormality", [&] {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> u(-3.0, 3.0);
    double worst = 0.0;
    for (int i = 0; i < 500; ++i) {
      const NonHermitianSSHParams p{u(rng), u(rng), u(rng)};
      const double k = u(rng);
      BiorthogonalPair g;
      try {
        g = biorthogonal_ground(nh_ssh_bloch_hamiltonian(p, k));
      } catch (const ExceptionalPointError&) {
        continue;
      }
      const Eigen::Matrix2cd h = nh_ssh_bloch_hamiltonian(p, k);
      worst = std::max(worst, std::abs((g.left * g.right)(0, 0) - 1.0));
      worst = std::max(worst, (h * g.right + g.R * g.right).norm());
      worst = std::max(worst, (g.left * h + g.R * g.left).norm());
      const double theta = u(rng);
      const double phi = u(rng);
      const BiKrylovBasis b =
          bikrylov_basis(std::cos(theta / 2), std::polar(std::sin(theta / 2), phi));
      worst = std::max(worst, std::abs((b.left0 * b.right0)(0, 0) - 1.0));
      worst = std::max(worst, std::abs((b.left1 * b.right1)(0, 0) - 1.0));
      worst = std::max(worst, std::abs((b.left0 * b.right1)(0, 0)));
      worst = std::max(worst, std::abs((b.left1 * b.right0)(0, 0)));
    }
    s.at_most("biorthonormality and eigen-residuals", worst, 1e-10);
  });
  s.guarded("dual-path per-mode complexity", [&] {
    double worst = 0.0;
    for (int i = 0; i < 64; ++i) {
      const double k = -kPi + (i + 0.5) * 2.0 * kPi / 64;
      worst = std::max(worst, std::abs(nh_complexity_per_mode({2.0, 1.0, 1.0}, k, 0.5, 0.5) -
                                       nh_complexity_per_mode_explicit({2.0, 1.0, 1.0}, k, 0.5, 0.5)));
    }
    s.at_most("overlap path vs explicit path", worst, 1e-10);
  });
  s.guarded("Hermitian limit", [&] {
    const double herm = ground_complexity(ssh_model({2.0, 1.3}), GlobalReference(kPi / 2, 0.0));
    s.at_most("gamma = 1e-6 vs Hermitian",
              std::abs(nh_ground_complexity({2.0, 1.3, 1e-6}, 0.5, 0.5) - herm), 1e-5);
  });
  s.guarded("exceptional-line cusps", [&] {
    SweepSpec spec;
    spec.model = ModelKind::nh_ssh;
    spec.fixed = {{"t1", 2.0}, {"gamma", 1.0}};
    spec.sweep = {"t2", 0.5, 4.0, 200};
    spec.theta = kPi / 2;
    spec.phi = 0.0;
    const auto cusps = detect_cusps(run_sweep(spec));
    const double spacing = 3.5 / 199;
    double worst = cusps.size() == 2 ? 0.0 : INFINITY;
    if (cusps.size() == 2) {
      worst = std::max(std::abs(cusps[0] - 1.5), std::abs(cusps[1] - 2.5));
    }
    s.at_most("cusps at t2 = 1.5, 2.5 (distance)", worst, spacing);
  });
  return s.take();
}

}  // namespace

bool SuiteReport::passed() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

const std::vector<std::string>& verify_suite_names() {
  static const std::vector<std::string> names = {"special-functions", "closed-forms", "duality",
                                                 "bound", "winding", "nonhermitian"};
  return names;
}

std::vector<SuiteReport> run_verify(const std::string& suite) {
  using Runner = SuiteReport (*)();
  const std::vector<std::pair<std::string, Runner>> table = {
      {"special-functions", special_functions_suite}, {"closed-forms", closed_forms_suite},
      {"duality", duality_suite},                     {"bound", bound_suite},
      {"winding", winding_suite},                     {"nonhermitian", nonhermitian_suite},
  };
  std::vector<SuiteReport> out;
  for (const auto& [name, run] : table) {
    if (suite == "all" || suite == name) out.push_back(run());
  }
  if (out.empty()) throw SpecError("unknown verify suite '" + suite + "'");
  return out;
}

}  // namespace twoband

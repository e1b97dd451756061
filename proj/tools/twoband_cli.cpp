// Command-line front end: sweeps, point diagnostics and verification suites.

#include <algorithm>
#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "twoband/bounds_duality.h"
#include "twoband/errors.h"
#include "twoband/nonhermitian.h"
#include "twoband/sweep.h"
#include "twoband/topology.h"
#include "twoband/verify.h"

namespace {

using namespace twoband;
using nlohmann::json;

constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitSpecError = 2;
constexpr int kExitNumerical = 3;

struct CommonOptions {
  std::string model = "ssh";
  std::vector<std::string> set;
  double theta = 0.0;
  double phi = 0.0;
  bool degrees = false;
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  std::string out;
};

struct SweepOptions {
  std::string sweep;
  std::string ref_piecewise;
  std::vector<std::string> quantities = {"complexity"};
  int jobs = 1;
  double fd_step = 1e-5;
  bool cusps = false;
};

void add_model_options(CLI::App* cmd, CommonOptions& o) {
  cmd->add_option("--model", o.model, "ssh, massive-dirac, dual-ssh, cooper-pair-box, nh-ssh")
      ->capture_default_str();
  cmd->add_option("--set", o.set, "Model parameter key=value (repeatable)");
  cmd->add_option("--theta", o.theta, "Reference polar angle")->capture_default_str();
  cmd->add_option("--phi", o.phi, "Reference azimuthal angle")->capture_default_str();
  cmd->add_flag("--degrees", o.degrees, "Angles are given in degrees");
  cmd->add_option("--abs-tol", o.abs_tol, "Absolute tolerance of BZ averages")->capture_default_str();
  cmd->add_option("--rel-tol", o.rel_tol, "Relative tolerance of BZ averages")->capture_default_str();
  cmd->add_option("--out", o.out, "Output file (.csv or .json); stdout when omitted");
}

void add_sweep_options(CLI::App* cmd, SweepOptions& s) {
  cmd->add_option("--sweep", s.sweep, "name:start:stop:points")->required();
  cmd->add_option("--ref-piecewise", s.ref_piecewise,
                  "File of 'k_lo k_hi nx ny nz' segments used as the reference");
  cmd->add_option("--quantities", s.quantities,
                  "Comma list of complexity, dcomplexity, chi_f, chi_f_components, bound, ratio, winding")
      ->delimiter(',')
      ->capture_default_str();
  cmd->add_option("--jobs", s.jobs, "Worker threads")->capture_default_str();
  cmd->add_option("--fd-step", s.fd_step, "Finite-difference step for dcomplexity")
      ->capture_default_str();
}

std::map<std::string, double> parse_sets(const std::vector<std::string>& sets) {
  std::map<std::string, double> out;
  for (const auto& item : sets) {
    const auto eq = item.find('=');
    if (eq == std::string::npos || eq == 0) throw SpecError("--set expects key=value, got '" + item + "'");
    const std::string key = item.substr(0, eq);
    const std::string text = item.substr(eq + 1);
    try {
      std::size_t used = 0;
      const double v = std::stod(text, &used);
      if (used != text.size()) throw std::invalid_argument("trailing");
      out[key] = v;
    } catch (const std::logic_error&) {
      throw SpecError("--set " + key + " has a malformed number '" + text + "'");
    }
  }
  return out;
}

GlobalReference reference(const CommonOptions& o) {
  const double f = o.degrees ? std::numbers::pi / 180.0 : 1.0;
  return GlobalReference(o.theta * f, o.phi * f);
}

BZQuadratureConfig quadrature(const CommonOptions& o) {
  BZQuadratureConfig cfg;
  cfg.abs_tol = o.abs_tol;
  cfg.rel_tol = o.rel_tol;
  cfg.validate();
  return cfg;
}

// Writes text to --out or stdout.
void emit(const CommonOptions& o, const std::string& text) {
  if (o.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(o.out);
  if (!file) throw SpecError("cannot write '" + o.out + "'");
  file << text;
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

int run_sweep_command(const CommonOptions& o, const SweepOptions& s, bool nh) {
  SweepSpec spec;
  spec.model = nh ? ModelKind::nh_ssh : parse_model_kind(o.model);
  spec.fixed = parse_sets(o.set);
  spec.sweep = SweepRange::parse(s.sweep);
  const GlobalReference ref = reference(o);
  spec.theta = ref.theta();
  spec.phi = ref.phi();
  if (!s.ref_piecewise.empty()) spec.piecewise = read_piecewise_reference(s.ref_piecewise);
  spec.quantities = s.quantities;
  spec.quadrature = quadrature(o);
  spec.fd.step = s.fd_step;
  spec.jobs = s.jobs;

  const std::vector<SweepRecord> records = run_sweep(spec);
  std::ostringstream text;
  if (ends_with(o.out, ".json")) {
    write_json(text, spec, records);
  } else {
    write_csv(text, spec.columns(), records);
  }
  emit(o, text.str());

  if (s.cusps) {
    const std::string q = std::find(spec.quantities.begin(), spec.quantities.end(), "complexity") !=
                                  spec.quantities.end()
                              ? "complexity"
                              : spec.columns().front();
    std::cerr << "cusps in " << q << ":";
    for (double c : detect_cusps(records, q)) std::cerr << ' ' << c;
    std::cerr << '\n';
  }
  return kExitOk;
}

int run_verify_command(const std::string& suite) {
  const auto reports = run_verify(suite);
  bool all = true;
  for (const auto& r : reports) {
    std::cout << "[" << r.suite << "]\n";
    for (const auto& c : r.checks) {
      std::ostringstream line;
      line << "  " << (c.passed ? "PASS" : "FAIL") << "  " << c.name << "  measured="
           << std::setprecision(3) << c.measured << "  tolerance=" << c.tolerance;
      if (!c.note.empty()) line << "  (" << c.note << ")";
      std::cout << line.str() << '\n';
    }
    all = all && r.passed();
  }
  std::cout << (all ? "all checks passed" : "some checks FAILED") << '\n';
  return all ? kExitOk : kExitVerifyFailed;
}

int run_winding_command(const CommonOptions& o, int grid) {
  const ModelKind kind = parse_model_kind(o.model);
  const auto values = parse_sets(o.set);
  json doc;
  doc["model"] = o.model;
  doc["parameters"] = values;
  if (kind == ModelKind::dual_ssh) {
    const auto [a, b] = dual_windings({values.count("t") ? values.at("t") : 1.0,
                                       values.count("r") ? values.at("r") : 1.0},
                                      grid);
    doc["nu_I"] = a;
    doc["nu_II"] = b;
  } else {
    const TwoBandModel model = build_model(kind, values, default_parameter(kind));
    const WindingResult w = winding_log_derivative_detailed(off_diagonal(model), grid);
    doc["winding"] = w.value;
    doc["winding_raw"] = w.raw;
    doc["cross_product"] = winding_cross_product(model);
  }
  emit(o, doc.dump(2) + "\n");
  return kExitOk;
}

int run_duality_command(const CommonOptions& o) {
  const auto values = parse_sets(o.set);
  const DualSSHParams p{values.count("t") ? values.at("t") : 1.0,
                        values.count("r") ? values.at("r") : 1.0};
  const GlobalReference ref = reference(o);
  const BZQuadratureConfig cfg = quadrature(o);
  json doc;
  doc["r"] = p.r;
  doc["H"] = duality_H(p.r, ref);
  const DualityResult c = complexity_duality_check(p, ref, cfg);
  doc["complexity"] = {{"lhs", c.lhs}, {"rhs", c.rhs}, {"residual", c.residual}};
  if (p.r != 1.0) {
    const DualityResult f = fs_duality_check(p, cfg);
    doc["chi_f"] = {{"lhs", f.lhs}, {"rhs", f.rhs}, {"residual", f.residual}};
    const auto [a, b] = dual_windings(p);
    doc["windings"] = {a, b};
  } else {
    json pts = json::array();
    for (const auto& s : self_dual_constraint(p, ref, {1e-2, 1e-3, 1e-4, -1e-2, -1e-3, -1e-4})) {
      pts.push_back({{"r", s.r}, {"lhs", s.lhs}, {"rhs", s.rhs}, {"residual", s.residual}});
    }
    doc["self_dual"] = pts;
  }
  emit(o, doc.dump(2) + "\n");
  return kExitOk;
}

int run_bound_command(const CommonOptions& o, std::string parameter, bool ratio_only) {
  const ModelKind kind = parse_model_kind(o.model);
  if (parameter.empty()) parameter = default_parameter(kind);
  const auto values = parse_sets(o.set);
  const TwoBandModel model = build_model(kind, values, parameter);
  const GlobalReference ref = reference(o);
  const BZQuadratureConfig cfg = quadrature(o);
  json doc;
  doc["model"] = o.model;
  doc["parameter"] = parameter;
  doc["lambda"] = model.lambda();
  if (ratio_only) {
    doc["ratio"] = ratio_R(model, ref, model.lambda(), cfg);
    doc["sqrt_2_3"] = std::sqrt(2.0 / 3.0);
  } else {
    const BoundReport b = bound_check(model, ref, model.lambda(), cfg);
    auto num = [](double v) { return std::isfinite(v) ? json(v) : json(nullptr); };
    doc["lhs"] = num(b.lhs);
    doc["lhs_fd"] = num(b.lhs_fd);
    doc["rhs"] = num(b.rhs);
    doc["q"] = b.q;
    doc["chi_f_components"] = b.chi;
    doc["dominant"] = b.dominant;
    doc["ratio"] = num(b.ratio);
    doc["diverged"] = b.diverged;
    doc["satisfied"] = b.satisfied;
  }
  emit(o, doc.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Krylov spread complexity, fidelity susceptibility and topology of two-band models"};
  app.require_subcommand(1);
  app.set_config("--config", "", "INI file with one [subcommand] section of option=value lines; command-line flags take precedence");

  CommonOptions common;
  SweepOptions sweep_opts;

  auto* sweep = app.add_subcommand("sweep", "Sweep one model parameter and tabulate quantities");
  add_model_options(sweep, common);
  add_sweep_options(sweep, sweep_opts);

  auto* nh = app.add_subcommand("nh-sweep", "Biorthogonal complexity of the non-Hermitian SSH model");
  add_model_options(nh, common);
  add_sweep_options(nh, sweep_opts);
  nh->add_flag("--cusps", sweep_opts.cusps, "Report detected cusps on stderr");
  sweep->add_flag("--cusps", sweep_opts.cusps, "Report detected cusps on stderr");

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "Run an invariant suite");
  verify->add_option("suite", suite, "special-functions, closed-forms, duality, bound, winding, nonhermitian, all")
      ->capture_default_str();

  int grid = 1024;
  auto* winding = app.add_subcommand("winding", "Winding number of one model");
  add_model_options(winding, common);
  winding->add_option("--grid", grid, "k grid size")->capture_default_str();

  auto* duality = app.add_subcommand("duality", "Duality identities of the r <-> 1/r pair");
  add_model_options(duality, common);

  std::string parameter;
  auto* bound = app.add_subcommand("bound", "Complexity-susceptibility bound at one parameter point");
  add_model_options(bound, common);
  bound->add_option("--param", parameter, "Parameter to differentiate in (model default if omitted)");

  auto* ratio = app.add_subcommand("ratio", "Ratio R at one parameter point");
  add_model_options(ratio, common);
  ratio->add_option("--param", parameter, "Parameter to differentiate in (model default if omitted)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitSpecError;
  }

  try {
    if (*sweep) return run_sweep_command(common, sweep_opts, false);
    if (*nh) {
      if (common.model != "ssh" && common.model != "nh-ssh") {
        throw SpecError("nh-sweep always uses the nh-ssh model");
      }
      if (nh->count("--quantities") == 0) sweep_opts.quantities = {"complexity", "dcomplexity"};
      return run_sweep_command(common, sweep_opts, true);
    }
    if (*verify) return run_verify_command(suite);
    if (*winding) return run_winding_command(common, grid);
    if (*duality) return run_duality_command(common);
    if (*bound) return run_bound_command(common, parameter, false);
    if (*ratio) return run_bound_command(common, parameter, true);
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitSpecError;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

#include "twoband/sweep.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <fstream>
#include <ostream>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "twoband/bounds_duality.h"
#include "twoband/errors.h"
#include "twoband/fidelity.h"
#include "twoband/nonhermitian.h"
#include "twoband/topology.h"

namespace twoband {
namespace {

struct ModelInfo {
  ModelKind kind;
  const char* name;
  std::vector<std::pair<std::string, double>> defaults;
  std::vector<std::string> sweepable;
};

const std::vector<ModelInfo>& model_table() {
  static const std::vector<ModelInfo> table = {
      {ModelKind::ssh, "ssh", {{"t1", 1.0}, {"t2", 1.0}}, {"t1", "t2"}},
      {ModelKind::massive_dirac, "massive-dirac", {{"t", 1.0}, {"mu", 0.0}}, {"t", "mu"}},
      {ModelKind::dual_ssh, "dual-ssh", {{"t", 1.0}, {"r", 1.0}}, {"r", "rho"}},
      {ModelKind::cooper_pair_box,
       "cooper-pair-box",
       {{"Ej", 1.0}, {"Ecc", 1.0}, {"ng", 0.0}, {"Phi_over_Phi0", 0.0}},
       {"Ej", "Ecc", "ng"}},
      {ModelKind::nh_ssh, "nh-ssh", {{"t1", 1.0}, {"t2", 1.0}, {"gamma", 0.0}},
       {"t1", "t2", "gamma"}},
  };
  return table;
}

const ModelInfo& info(ModelKind kind) {
  for (const auto& m : model_table()) {
    if (m.kind == kind) return m;
  }
  throw SpecError("unknown model kind");
}

double param(const SweepSpec& spec, const std::string& name) {
  if (spec.sweep.parameter == name) return spec.sweep.start;
  auto it = spec.fixed.find(name);
  if (it != spec.fixed.end()) return it->second;
  for (const auto& [key, value] : info(spec.model).defaults) {
    if (key == name) return value;
  }
  return 0.0;
}

double lookup(ModelKind kind, const std::map<std::string, double>& values, const std::string& name) {
  auto it = values.find(name);
  if (it != values.end()) return it->second;
  for (const auto& [key, value] : info(kind).defaults) {
    if (key == name) return value;
  }
  return 0.0;
}

NonHermitianSSHParams nh_params(const SweepSpec& spec, double lambda) {
  NonHermitianSSHParams p{param(spec, "t1"), param(spec, "t2"), param(spec, "gamma")};
  if (spec.sweep.parameter == "t1") p.t1 = lambda;
  if (spec.sweep.parameter == "t2") p.t2 = lambda;
  if (spec.sweep.parameter == "gamma") p.gamma = lambda;
  return p;
}

bool wants(const SweepSpec& spec, const std::string& q) {
  return std::find(spec.quantities.begin(), spec.quantities.end(), q) != spec.quantities.end();
}

ReferenceState reference_of(const SweepSpec& spec) {
  if (spec.piecewise) return *spec.piecewise;
  return GlobalReference(spec.theta, spec.phi);
}

SweepRecord evaluate_nh(const SweepSpec& spec, double lambda) {
  SweepRecord rec;
  rec.lambda = lambda;
  const GlobalReference ref(spec.theta, spec.phi);
  auto c = [&](double l) {
    return nh_ground_complexity(nh_params(spec, l), ref.alpha(), ref.beta(), spec.quadrature);
  };
  try {
    if (wants(spec, "complexity")) rec.values["complexity"] = c(lambda);
    if (wants(spec, "dcomplexity")) rec.values["dcomplexity"] = param_derivative(c, lambda, spec.fd);
  } catch (const ExceptionalPointError&) {
    rec.values.clear();
    rec.flags.insert("skipped_exceptional");
  }
  return rec;
}

SweepRecord evaluate_point(const SweepSpec& spec, const TwoBandModel& base, double lambda) {
  if (spec.model == ModelKind::nh_ssh) return evaluate_nh(spec, lambda);
  SweepRecord rec;
  rec.lambda = lambda;
  const TwoBandModel model = base.at(lambda);
  const ReferenceState ref = reference_of(spec);

  if (wants(spec, "complexity")) rec.values["complexity"] = ground_complexity(model, ref, spec.quadrature);
  if (wants(spec, "dcomplexity")) {
    rec.values["dcomplexity"] = param_derivative(
        [&](double l) { return ground_complexity(base.at(l), ref, spec.quadrature); }, lambda,
        spec.fd);
  }
  if (wants(spec, "chi_f") || wants(spec, "chi_f_components")) {
    const SusceptibilityBreakdown chi = twoband::chi_F(model, lambda, spec.quadrature);
    if (chi.diverged) rec.flags.insert("diverged");
    if (wants(spec, "chi_f")) rec.values["chi_f"] = chi.total;
    if (wants(spec, "chi_f_components")) {
      rec.values["chi_f_x"] = chi.components[0];
      rec.values["chi_f_y"] = chi.components[1];
      rec.values["chi_f_z"] = chi.components[2];
    }
  }
  if (wants(spec, "bound")) {
    const BoundReport b = bound_check(model, std::get<GlobalReference>(ref), lambda, spec.quadrature);
    if (b.diverged) {
      rec.flags.insert("diverged");
    } else {
      rec.values["bound_lhs"] = b.lhs;
      rec.values["bound_rhs"] = b.rhs;
      rec.values["bound_slack"] = b.rhs - b.lhs;
      if (!b.satisfied) rec.flags.insert("bound_violated");
    }
  }
  if (wants(spec, "ratio")) {
    try {
      rec.values["ratio"] = ratio_R(model, std::get<GlobalReference>(ref), lambda, spec.quadrature);
    } catch (const UndefinedRatioError&) {
      rec.flags.insert("ratio_undefined");
    }
  }
  if (wants(spec, "winding")) {
    try {
      rec.values["winding"] = winding_log_derivative(off_diagonal(model));
    } catch (const GapClosedError&) {
      rec.flags.insert("gap_closed");
    } catch (const NonQuantizedError&) {
      rec.flags.insert("gap_closed");
    }
  }
  return rec;
}

std::string format_real(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join_flags(const std::set<std::string>& flags) {
  std::string out;
  for (const auto& f : flags) {
    if (!out.empty()) out += ';';
    out += f;
  }
  return out;
}

}  // namespace

ModelKind parse_model_kind(const std::string& name) {
  for (const auto& m : model_table()) {
    if (name == m.name) return m.kind;
  }
  throw SpecError("unknown model '" + name +
                  "' (expected ssh, massive-dirac, dual-ssh, cooper-pair-box or nh-ssh)");
}

std::string to_string(ModelKind kind) { return info(kind).name; }

std::string default_parameter(ModelKind kind) {
  switch (kind) {
    case ModelKind::ssh:
    case ModelKind::nh_ssh:
      return "t2";
    case ModelKind::massive_dirac:
      return "mu";
    case ModelKind::dual_ssh:
      return "r";
    case ModelKind::cooper_pair_box:
      return "ng";
  }
  return "";
}

TwoBandModel build_model(ModelKind kind, const std::map<std::string, double>& values,
                         const std::string& parameter) {
  const ModelInfo& m = info(kind);
  if (kind == ModelKind::nh_ssh) throw SpecError("nh-ssh has no Hermitian d-vector model");
  if (std::find(m.sweepable.begin(), m.sweepable.end(), parameter) == m.sweepable.end()) {
    throw SpecError("parameter '" + parameter + "' cannot be varied for model " + m.name);
  }
  for (const auto& [key, value] : values) {
    const bool known = key == parameter ||
                       std::any_of(m.defaults.begin(), m.defaults.end(),
                                   [&](const auto& d) { return d.first == key; });
    if (!known) throw SpecError("model " + std::string(m.name) + " has no parameter '" + key + "'");
  }
  auto get = [&](const std::string& name) { return lookup(kind, values, name); };
  switch (kind) {
    case ModelKind::ssh: {
      if (parameter == "t2") return ssh_model({get("t1"), get("t2")});
      const double t2 = get("t2");
      return TwoBandModel(
          "ssh", "t1", get("t1"),
          [t2](double k, double t1) {
            return DVector{t1 - t2 * std::cos(k), 0.0, t2 * std::sin(k)};
          },
          [](double, double) { return DVector{1.0, 0.0, 0.0}; });
    }
    case ModelKind::massive_dirac: {
      if (parameter == "mu") return massive_dirac_model({get("t"), get("mu")});
      const double mu = get("mu");
      return TwoBandModel(
          "massive-dirac", "t", get("t"),
          [mu](double k, double t) { return DVector{t * std::sin(k), 0.0, mu}; },
          [](double k, double) { return DVector{std::sin(k), 0.0, 0.0}; }, Basis::xy_plane);
    }
    case ModelKind::dual_ssh: {
      const bool second = parameter == "rho";
      if (second && !values.count("rho")) throw SpecError("dual-ssh with parameter rho needs rho set");
      const double r = second ? 1.0 / values.at("rho") : get("r");
      const auto [first_model, second_model] = dual_pair({get("t"), r});
      return second ? second_model : first_model;
    }
    case ModelKind::cooper_pair_box: {
      if (parameter == "ng") {
        return cooper_pair_box_model({get("Ej"), get("Ecc"), get("ng"), get("Phi_over_Phi0")});
      }
      const double ej = get("Ej");
      const double ecc = get("Ecc");
      const double ng = get("ng");
      const bool sweep_ej = parameter == "Ej";
      return TwoBandModel(
          "cooper-pair-box", parameter, sweep_ej ? ej : ecc,
          [=](double k, double l) {
            const double e_j = sweep_ej ? l : ej;
            const double e_c = sweep_ej ? ecc : l;
            return DVector{-e_j * std::cos(k), 0.0, 0.5 * e_c * (1.0 - 2.0 * ng)};
          },
          {}, Basis::xy_plane);
    }
    case ModelKind::nh_ssh:
      break;
  }
  throw SpecError("model has no Hermitian form");
}

SweepRange SweepRange::parse(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ':')) parts.push_back(item);
  if (parts.size() != 4) throw SpecError("--sweep expects name:start:stop:points, got '" + text + "'");
  SweepRange r;
  r.parameter = parts[0];
  try {
    std::size_t used = 0;
    r.start = std::stod(parts[1], &used);
    if (used != parts[1].size()) throw std::invalid_argument("trailing");
    r.stop = std::stod(parts[2], &used);
    if (used != parts[2].size()) throw std::invalid_argument("trailing");
    r.points = std::stoi(parts[3], &used);
    if (used != parts[3].size()) throw std::invalid_argument("trailing");
  } catch (const std::logic_error&) {
    throw SpecError("--sweep has a malformed number in '" + text + "'");
  }
  return r;
}

double SweepRange::at(int i) const {
  if (i == points - 1) return stop;
  return start + (stop - start) * static_cast<double>(i) / (points - 1);
}

void SweepSpec::validate() const {
  const ModelInfo& m = info(model);
  if (sweep.points < 2) throw SpecError("a sweep needs at least 2 points");
  if (!(sweep.start < sweep.stop)) throw SpecError("sweep start must be below stop");
  if (std::find(m.sweepable.begin(), m.sweepable.end(), sweep.parameter) == m.sweepable.end()) {
    throw SpecError("parameter '" + sweep.parameter + "' cannot be swept for model " + m.name);
  }
  if (fixed.count(sweep.parameter)) {
    throw SpecError("sweep parameter '" + sweep.parameter + "' is also fixed");
  }
  for (const auto& [key, value] : fixed) {
    const bool known = std::any_of(m.defaults.begin(), m.defaults.end(),
                                   [&](const auto& d) { return d.first == key; });
    if (!known) throw SpecError("model " + std::string(m.name) + " has no parameter '" + key + "'");
    if (!std::isfinite(value)) throw SpecError("parameter '" + key + "' must be finite");
  }
  if (quantities.empty()) throw SpecError("no quantities requested");
  for (const auto& q : quantities) {
    const auto& known = known_quantities();
    if (std::find(known.begin(), known.end(), q) == known.end()) {
      throw SpecError("unknown quantity '" + q + "'");
    }
    if (piecewise && (q == "bound" || q == "ratio")) {
      throw SpecError("bound and ratio require a k-independent reference state");
    }
    if (model == ModelKind::nh_ssh && q != "complexity" && q != "dcomplexity") {
      throw SpecError("nh-ssh supports only complexity and dcomplexity");
    }
  }
  if (model == ModelKind::nh_ssh && piecewise) {
    throw SpecError("nh-ssh takes a global reference only");
  }
  if (jobs < 1) throw SpecError("--jobs must be at least 1");
  if (!(fd.step > 0.0)) throw SpecError("finite-difference step must be positive");
  quadrature.validate();
}

std::vector<std::string> SweepSpec::columns() const {
  std::vector<std::string> cols;
  for (const auto& q : known_quantities()) {
    if (std::find(quantities.begin(), quantities.end(), q) == quantities.end()) continue;
    if (q == "chi_f_components") {
      cols.insert(cols.end(), {"chi_f_x", "chi_f_y", "chi_f_z"});
    } else if (q == "bound") {
      cols.insert(cols.end(), {"bound_lhs", "bound_rhs", "bound_slack"});
    } else {
      cols.push_back(q);
    }
  }
  return cols;
}

std::vector<SweepRecord> run_sweep(const SweepSpec& spec) {
  spec.validate();
  const int n = spec.sweep.points;
  std::optional<TwoBandModel> base;
  if (spec.model != ModelKind::nh_ssh) {
    std::map<std::string, double> values = spec.fixed;
    values[spec.sweep.parameter] = spec.sweep.start;
    base = build_model(spec.model, values, spec.sweep.parameter);
  }

  std::vector<SweepRecord> records(n);
  std::vector<std::exception_ptr> errors(n);
  std::atomic<int> next{0};
  auto worker = [&] {
    for (int i = next++; i < n; i = next++) {
      try {
        records[i] = evaluate_point(spec, base ? *base : TwoBandModel("", "", 0.0, {}),
                                    spec.sweep.at(i));
      } catch (const GapClosedError&) {
        records[i].lambda = spec.sweep.at(i);
        records[i].flags.insert("gap_closed");
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };

  const int workers = std::min(spec.jobs, n);
  if (workers <= 1) {
    worker();
  } else {
    std::vector<std::jthread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
  }
  for (const auto& e : errors) {
    if (e) std::rethrow_exception(e);
  }
  return records;
}

void write_csv(std::ostream& out, const std::vector<std::string>& columns,
               const std::vector<SweepRecord>& records) {
  out << "lambda";
  for (const auto& c : columns) out << ',' << c;
  out << ",flags\n";
  for (const auto& rec : records) {
    out << format_real(rec.lambda);
    for (const auto& c : columns) {
      out << ',';
      auto it = rec.values.find(c);
      if (it != rec.values.end()) out << format_real(it->second);
    }
    out << ',' << join_flags(rec.flags) << '\n';
  }
}

void write_json(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRecord>& records) {
  using nlohmann::json;
  json doc;
  doc["model"] = to_string(spec.model);
  doc["fixed"] = spec.fixed;
  doc["sweep"] = {{"parameter", spec.sweep.parameter},
                  {"start", spec.sweep.start},
                  {"stop", spec.sweep.stop},
                  {"points", spec.sweep.points}};
  if (spec.piecewise) {
    json segs = json::array();
    for (const auto& s : spec.piecewise->segments()) {
      segs.push_back({{"k_lo", s.k_lo}, {"k_hi", s.k_hi}, {"n", {s.n.nx(), s.n.ny(), s.n.nz()}}});
    }
    doc["reference"] = {{"piecewise", segs}};
  } else {
    doc["reference"] = {{"theta", spec.theta}, {"phi", spec.phi}};
  }
  doc["columns"] = spec.columns();
  json rows = json::array();
  for (const auto& rec : records) {
    json row;
    row["lambda"] = rec.lambda;
    json values = json::object();
    for (const auto& [k, v] : rec.values) values[k] = std::isfinite(v) ? json(v) : json(nullptr);
    row["values"] = values;
    row["flags"] = rec.flags;
    rows.push_back(row);
  }
  doc["records"] = rows;
  out << doc.dump(2) << '\n';
}

PiecewiseReference read_piecewise_reference(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw SpecError("cannot open piecewise reference file '" + path + "'");
  std::vector<ReferenceSegment> segments;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    double lo, hi, x, y, z;
    if (!(ls >> lo)) continue;
    if (!(ls >> hi >> x >> y >> z)) {
      throw SpecError(path + ":" + std::to_string(lineno) + ": expected 'k_lo k_hi nx ny nz'");
    }
    try {
      segments.push_back({lo, hi, BlochVector(x, y, z)});
    } catch (const GapClosedError&) {
      throw SpecError(path + ":" + std::to_string(lineno) + ": zero Bloch vector");
    }
  }
  return PiecewiseReference(std::move(segments));
}

}  // namespace twoband

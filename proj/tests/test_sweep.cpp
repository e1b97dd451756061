#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <numbers>
#include <sstream>

#include "doctest.h"
#include "json.hpp"
#include "twoband/complexity.h"
#include "twoband/errors.h"
#include "twoband/fidelity.h"
#include "twoband/sweep.h"

using namespace twoband;
using doctest::Approx;

namespace {
constexpr double kPi = std::numbers::pi;

SweepSpec ssh_spec() {
  SweepSpec s;
  s.model = ModelKind::ssh;
  s.sweep = SweepRange::parse("t2:0.5:1.5:21");
  s.theta = kPi / 2;
  s.phi = kPi;
  s.quantities = {"complexity", "chi_f", "bound", "winding"};
  return s;
}

std::string csv(const SweepSpec& s) {
  std::ostringstream out;
  write_csv(out, s.columns(), run_sweep(s));
  return out.str();
}
}  // namespace

TEST_CASE("model_names_round_trip") {
  for (auto k : {ModelKind::ssh, ModelKind::massive_dirac, ModelKind::dual_ssh, ModelKind::cooper_pair_box,
                 ModelKind::nh_ssh}) {
    CHECK(parse_model_kind(to_string(k)) == k);
  }
  CHECK_THROWS_AS(parse_model_kind("kitaev"), SpecError);
  CHECK(default_parameter(ModelKind::massive_dirac) == "mu");
}

TEST_CASE("sweep_range_parsing") {
  const auto r = SweepRange::parse("t2:0.5:1.5:11");
  CHECK(r.parameter == "t2");
  CHECK(r.points == 11);
  CHECK(r.at(0) == 0.5);
  CHECK(r.at(10) == 1.5);
  CHECK(r.at(5) == Approx(1.0));
  CHECK_THROWS_AS(SweepRange::parse("t2:0.5:1.5"), SpecError);
  CHECK_THROWS_AS(SweepRange::parse("t2:a:1.5:3"), SpecError);
  CHECK_THROWS_AS(SweepRange::parse("t2:0.5:1.5:3x"), SpecError);
}

TEST_CASE("build_model_uses_fixed_values") {
  const auto m = build_model(ModelKind::ssh, {{"t1", 2.0}, {"t2", 3.0}}, "t2");
  CHECK(m.lambda() == 3.0);
  CHECK(m.d(0.0).x == Approx(-1.0));
  const auto t1 = build_model(ModelKind::ssh, {{"t1", 2.0}, {"t2", 3.0}}, "t1");
  CHECK(t1.lambda() == 2.0);
  CHECK(t1.d_lambda(0.3).x == 1.0);
  const auto rho = build_model(ModelKind::dual_ssh, {{"t", 1.0}, {"rho", 0.5}}, "rho");
  CHECK(rho.lambda() == Approx(0.5));
  CHECK_THROWS_AS(build_model(ModelKind::ssh, {{"mu", 1.0}}, "t2"), SpecError);
  CHECK_THROWS_AS(build_model(ModelKind::ssh, {}, "gamma"), SpecError);
  CHECK_THROWS_AS(build_model(ModelKind::nh_ssh, {}, "t2"), SpecError);
}

TEST_CASE("sweep_values_match_direct_calls") {
  const auto s = ssh_spec();
  const auto rows = run_sweep(s);
  REQUIRE(rows.size() == 21);
  const GlobalReference ref(s.theta, s.phi);
  for (const auto& r : rows) {
    if (r.flags.count("gap_closed")) continue;
    CHECK(r.values.at("complexity") == Approx(ssh_complexity_closed({1.0, r.lambda}, ref)).epsilon(1e-8));
    CHECK(r.values.at("winding") == (r.lambda > 1.0 ? 1.0 : 0.0));
  }
  // t2 = 1.0 sits on the grid: the gap closes there.
  const auto& mid = rows[10];
  CHECK(mid.lambda == Approx(1.0));
  CHECK(mid.flags.count("gap_closed") == 1);
  CHECK(mid.flags.count("diverged") == 1);
  CHECK(rows[3].values.at("chi_f") == Approx(chi_F_ssh_total_closed({1.0, rows[3].lambda})).epsilon(1e-7));
}

TEST_CASE("csv_is_deterministic_and_independent_of_jobs") {
  auto s = ssh_spec();
  const std::string one = csv(s);
  CHECK(one == csv(s));
  s.jobs = 4;
  CHECK(one == csv(s));
  CHECK(one.rfind("lambda,complexity,chi_f,bound_lhs,bound_rhs,bound_slack,winding,flags\n", 0) == 0);
}

TEST_CASE("json_output") {
  auto s = ssh_spec();
  s.sweep = SweepRange::parse("t2:1.5:2.5:3");
  std::ostringstream out;
  write_json(out, s, run_sweep(s));
  const auto doc = nlohmann::json::parse(out.str());
  CHECK(doc["model"] == "ssh");
  CHECK(doc["records"].size() == 3);
  CHECK(doc["records"][0]["values"]["winding"] == 1.0);
  CHECK(doc["columns"].size() == 6);
}

TEST_CASE("piecewise_and_nh_sweeps") {
  SweepSpec s;
  s.sweep = SweepRange::parse("t2:1.5:3.5:5");
  s.piecewise = plateau_reference();
  const auto rows = run_sweep(s);
  for (const auto& r : rows) CHECK(r.values.at("complexity") == Approx(0.5 - 1.0 / kPi).epsilon(1e-8));

  SweepSpec nh;
  nh.model = ModelKind::nh_ssh;
  nh.fixed = {{"t1", 1.0}, {"gamma", 0.0}};
  nh.sweep = SweepRange::parse("t2:0.5:2:4");
  nh.theta = 1.0;
  nh.quantities = {"complexity", "dcomplexity"};
  const auto nrows = run_sweep(nh);
  for (const auto& r : nrows) {
    CHECK(r.values.at("complexity") == Approx(ssh_complexity_closed({1.0, r.lambda}, GlobalReference(1.0, 0.0))).epsilon(1e-7));
  }
}

TEST_CASE("invalid_specs") {
  auto s = ssh_spec();
  s.quantities = {"entropy"};
  CHECK_THROWS_AS(run_sweep(s), SpecError);
  s = ssh_spec();
  s.jobs = 0;
  CHECK_THROWS_AS(run_sweep(s), SpecError);
  s = ssh_spec();
  s.fixed = {{"t2", 1.0}};
  CHECK_THROWS_AS(run_sweep(s), SpecError);
  s = ssh_spec();
  s.piecewise = plateau_reference();
  CHECK_THROWS_AS(run_sweep(s), SpecError);  // bound needs a global reference
  s = ssh_spec();
  s.sweep.points = 1;
  CHECK_THROWS_AS(run_sweep(s), SpecError);
  s = ssh_spec();
  s.model = ModelKind::nh_ssh;
  CHECK_THROWS_AS(run_sweep(s), SpecError);
}

TEST_CASE("piecewise_reference_file") {
  const auto path = std::filesystem::temp_directory_path() / "twoband_plateau_ref.txt";
  {
    std::ofstream f(path);
    f << "# plateau\n-3.141592653589793 0 0 0 1\n\n0 3.141592653589793 0 0 -1\n";
  }
  const auto p = read_piecewise_reference(path.string());
  CHECK(p.segments().size() == 2);
  CHECK(p.at(1.0).nz() == -1.0);
  {
    std::ofstream f(path);
    f << "-3.141592653589793 1 0 0 1\n";
  }
  CHECK_THROWS_AS(read_piecewise_reference(path.string()), PartitionError);
  {
    std::ofstream f(path);
    f << "-3.141592653589793 3.141592653589793 0 0\n";
  }
  CHECK_THROWS_AS(read_piecewise_reference(path.string()), SpecError);
  std::filesystem::remove(path);
  CHECK_THROWS_AS(read_piecewise_reference(path.string()), SpecError);
}

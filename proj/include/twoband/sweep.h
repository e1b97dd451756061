#pragma once

#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "twoband/complexity.h"
#include "twoband/models.h"
#include "twoband/quadrature.h"

namespace twoband {

/// One row of a parameter sweep.
struct SweepRecord {
  double lambda = 0.0;
  std::map<std::string, double> values;
  /// Subset of {"diverged", "skipped_exceptional", "gap_closed"}.
  std::set<std::string> flags;

  bool has(const std::string& quantity) const { return values.count(quantity) > 0; }
};

enum class ModelKind { ssh, massive_dirac, dual_ssh, cooper_pair_box, nh_ssh };

ModelKind parse_model_kind(const std::string& name);
std::string to_string(ModelKind kind);

/// The parameter a model is swept in by default: t2, mu, r, ng (t2 for nh-ssh).
std::string default_parameter(ModelKind kind);

/// Hermitian model whose lambda is `parameter`, with every other parameter
/// taken from `values` or the model default. dual-ssh with parameter "rho"
/// is model II at rho. SpecError for unknown names or nh-ssh.
TwoBandModel build_model(ModelKind kind, const std::map<std::string, double>& values,
                         const std::string& parameter);

struct SweepRange {
  std::string parameter;
  double start = 0.0;
  double stop = 1.0;
  int points = 2;

  /// Parses "name:start:stop:points". SpecError on malformed input.
  static SweepRange parse(const std::string& text);
  double at(int i) const;
};

/// Quantities a sweep can emit.
///
/// complexity, dcomplexity, chi_f, chi_f_components (chi_f_x, chi_f_y, chi_f_z),
/// bound (bound_lhs, bound_rhs, bound_slack), ratio, winding.
inline const std::vector<std::string>& known_quantities() {
  static const std::vector<std::string> names = {
      "complexity", "dcomplexity", "chi_f", "chi_f_components", "bound", "ratio", "winding"};
  return names;
}

struct SweepSpec {
  ModelKind model = ModelKind::ssh;
  std::map<std::string, double> fixed;
  SweepRange sweep;
  /// Global reference by angles unless `piecewise` is set.
  double theta = 0.0;
  double phi = 0.0;
  std::optional<PiecewiseReference> piecewise;
  std::vector<std::string> quantities = {"complexity"};
  BZQuadratureConfig quadrature;
  FDConfig fd;
  int jobs = 1;

  /// SpecError on invalid combinations.
  void validate() const;
  /// Column names after `lambda`, in output order.
  std::vector<std::string> columns() const;
};

/// Evaluates every sweep point; records come back in sweep order and are
/// identical for any `jobs`.
std::vector<SweepRecord> run_sweep(const SweepSpec& spec);

/// `lambda,<columns>...,flags`, reals with 17 significant digits, empty
/// fields for missing values, flags joined by ';'.
void write_csv(std::ostream& out, const std::vector<std::string>& columns,
               const std::vector<SweepRecord>& records);
void write_json(std::ostream& out, const SweepSpec& spec, const std::vector<SweepRecord>& records);

/// Reads a piecewise reference file: one segment per line, "k_lo k_hi nx ny nz".
/// Blank lines and '#' comments are ignored.
PiecewiseReference read_piecewise_reference(const std::string& path);

}  // namespace twoband

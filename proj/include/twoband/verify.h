#pragma once

#include <string>
#include <vector>

namespace twoband {

struct CheckResult {
  std::string name;
  double measured = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string note;
};

struct SuiteReport {
  std::string suite;
  std::vector<CheckResult> checks;
  bool passed() const;
};

/// special-functions, closed-forms, duality, bound, winding, nonhermitian.
const std::vector<std::string>& verify_suite_names();

/// Runs one suite, or every suite for "all". SpecError for an unknown name.
std::vector<SuiteReport> run_verify(const std::string& suite);

}  // namespace twoband

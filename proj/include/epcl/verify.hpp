#pragma once

#include <string>
#include <vector>

namespace epcl::verify {

/// One measured quantity against its bound. `relation` is "<", ">", "in" (lo <= value <= hi) or "==".
struct Measurement {
  std::string name;
  double value = 0.0;
  std::string relation;
  double bound = 0.0;
  double bound_hi = 0.0;
  bool pass = false;
};

struct CheckResult {
  std::string id;          ///< "1" ... "11", "12a" ... "12e"
  std::string title;
  std::vector<std::string> suites;
  std::vector<Measurement> measurements;
  double seconds = 0.0;
  double time_budget = 0.0;
  std::string error;       ///< non-empty when the check threw
  bool pass = false;
};

struct Report {
  std::string suite;
  std::vector<CheckResult> checks;
  bool all_pass() const;
};

/// Suite names: all, lattice-core, darboux, ep-models, dynamics, scattering, waveguide-design, cli-io.
const std::vector<std::string>& suite_names();

/// Runs every check tagged with `suite` (all: every check). Unknown names raise rejected_input.
Report run(const std::string& suite);

/// Machine-readable report.
std::string to_json(const Report& report);

/// One line per check: PASS/FAIL, id, title, measured values.
std::string summary_line(const CheckResult& check);

}  // namespace epcl::verify

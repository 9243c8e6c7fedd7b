#pragma once

#include <map>
#include <string>
#include <vector>

#include <ellshell/thinshell.hpp>

namespace ellshell {

// One verification run: which ellipsoids, how many samples per check, the FD
// steps, and optional per-suite tolerance overrides for the FD-class checks
// (closed-form checks keep their pinned thresholds).
struct RunConfig {
  std::vector<double> a_values{0.5, 1.0, 2.0};
  int samples = 200;
  std::uint64_t seed = 42;
  double h1 = kDefaultH1;
  double h2 = kDefaultH2;
  double delta_pole = kDefaultPoleExclusion;
  std::vector<std::string> suites;             // empty -> all five
  std::map<std::string, double> tol_override;  // suite name -> tolerance
  std::string op_filter;                       // restrict route checks to one tag
};

// A single named check at a single a. kind gives the pass rule:
//   "max"  passed iff value <= threshold
//   "min"  passed iff value >= threshold
//   "band" passed iff |value - target| <= threshold
//   "info" always passes; value is reported for the record
struct CheckResult {
  std::string suite;
  std::string id;
  double a = 1.0;
  std::string kind = "max";
  double value = 0.0;
  double threshold = 0.0;
  double target = 0.0;
  bool passed = true;
  int samples = 0;
  std::string note;
};

const std::vector<std::string>& all_suite_names();

// Runs one suite for every a in cfg.a_values, in registry order.
std::vector<CheckResult> run_suite(const std::string& suite, const RunConfig& cfg);

// Runs cfg.suites (or all five) and concatenates the results.
std::vector<CheckResult> run_all(const RunConfig& cfg);

int count_failures(const std::vector<CheckResult>& results);

}  // namespace ellshell

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "liddi_app/config.hpp"

namespace liddi::app {

struct CheckResult {
  std::string id;     // "1" .. "12" for the numbered criteria, "S1" etc. for supporting checks
  std::string title;
  bool passed = false;
  double residual = 0;   // measured quantity compared against threshold
  double threshold = 0;
  std::string detail;
  double seconds = 0;
};

// Deliberate defects used to prove that the suite notices them.
enum class Mutation { None, FlipLinearSign };

struct SuiteOptions {
  Mutation mutation = Mutation::None;
  int threads = 1;
  std::optional<RunConfig> config;  // adds a precondition entry for this system
};

constexpr int kCriteria = 12;

CheckResult run_criterion(int n, const SuiteOptions& opt = {});
CheckResult steady_potential_check(const SuiteOptions& opt = {});
CheckResult config_precondition_check(const RunConfig& cfg);

// Numbered criteria in order, then the supporting checks.
std::vector<CheckResult> validate_suite(const SuiteOptions& opt = {});

void print_report(const std::vector<CheckResult>& r, std::ostream& out);

}  // namespace liddi::app

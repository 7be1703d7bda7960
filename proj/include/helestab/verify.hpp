// Verification suites behind the `verify` CLI subcommand: Bessel identities,
// oracle-vs-closed-form agreement, and asymptote ratio checks.
#pragma once

#include <string>
#include <vector>

namespace helestab::verify {

struct CheckResult {
  std::string name;
  bool passed;
  double measured;  // the quantity compared against the limit
  double limit;
};

struct SuiteResult {
  std::string suite;
  std::vector<CheckResult> checks;
  bool all_passed() const;
};

// tolerance_override <= 0 keeps each suite's built-in limits.
SuiteResult run_bessel_suite(double tolerance_override = 0.0);
SuiteResult run_oracle_suite(double tolerance_override = 0.0);
SuiteResult run_asymptotes_suite(double tolerance_override = 0.0);

// which: "bessel", "oracle", "asymptotes", or "all".
std::vector<SuiteResult> run_suites(const std::string& which,
                                    double tolerance_override = 0.0);

}  // namespace helestab::verify

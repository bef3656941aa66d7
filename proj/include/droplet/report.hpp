#pragma once

#include <map>
#include <string>

namespace droplet {

/// Outcome of one verification check: equality residuals, inequality
/// violations (positive means violated by that much) and any recovered
/// constants.  passed is true iff both residual figures are within the
/// tolerance.
struct VerificationReport {
  std::string check_name;
  std::string grid;
  std::map<std::string, double> constants;
  double max_equality_residual = 0.0;
  double worst_inequality_violation = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  bool skipped = false;

  void finalize() {
    passed = max_equality_residual <= tolerance &&
             worst_inequality_violation <= tolerance;
  }

  std::string to_json() const;
};

} // namespace droplet

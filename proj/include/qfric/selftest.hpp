#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace qfric {

struct SelftestOptions {
  /// Reports -Sigma^- from every Sigma evaluation (mutation check).
  bool inject_sigma_minus_flip = false;
  /// Multiplies the quadrature relative tolerance of every check.
  double tolerance_scale = 1.0;
};

struct CheckResult {
  std::string name;
  bool passed = false;
  double error = 0.0;     // measured deviation
  double threshold = 0.0; // pass if error < threshold
};

/// Closed-form and cross-route checks of the whole pipeline. Prints one line per check.
std::vector<CheckResult> run_selftest(const SelftestOptions& options, std::ostream& out);

} // namespace qfric

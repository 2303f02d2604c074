#pragma once

#include <string>
#include <vector>

namespace medent::cli {

/// Deliberate convention errors for exercising the checks.
enum class Fault { none, flip_trace_reversal, drop_lorentz_factors };

Fault parse_fault(const std::string& name);
const char* to_string(Fault fault);

struct ValidationOptions {
  Fault fault = Fault::none;
  double tol_scale = 1.0;  // multiplies every numerical tolerance and bound
};

struct CheckResult {
  std::string name;
  bool passed = false;
  double deviation = 0.0;
  double bound = 0.0;
  std::string detail;
};

std::vector<CheckResult> run_validation(const ValidationOptions& options = {});

}  // namespace medent::cli

#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "medent/action.hpp"
#include "medent/cli/scenario_file.hpp"
#include "medent/entanglement.hpp"

namespace medent::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitSchema = 2;
inline constexpr int kExitNumerical = 3;
inline constexpr const char* kToleranceEnv = "MEDENT_TOL";
inline constexpr double kDefaultTolerance = 1e-9;
inline constexpr const char* kSweepHeader = "param,phi_uu,phi_ud,phi_du,phi_dd,delta_phi,negativity,model";

/// Shortest round-trip decimal form.
std::string format_double(double x);

/// flag, then file, then MEDENT_TOL, then the built-in default.
double resolve_tolerance(const ScenarioFile& file, std::optional<double> flag);
ActionModel resolve_model(const ScenarioFile& file, std::optional<ActionModel> flag);

PhaseTable compute_phases(const ScenarioFile& file, ActionModel model, double tol);

nlohmann::ordered_json phase_json(const PhaseTable& table, double tol);
std::string phase_csv(const PhaseTable& table);

/// Parses a JSON array of amplitudes, each a number or [re, im].
SpinState parse_amplitudes(const std::string& text, std::size_t particles);
/// Comma-separated particle indices.
Bipartition parse_partition(const std::string& text, std::size_t particles);

nlohmann::ordered_json entangle_json(const PhaseTable& table, const SpinState& initial, const Bipartition& partition,
                                     double tol);

struct SweepRequest {
  std::string param;  // JSON pointer or dotted path into the scenario document
  double lo = 0.0;
  double hi = 0.0;
  int steps = 1;
  std::optional<double> tol;
  std::vector<ActionModel> models{ActionModel::exact, ActionModel::slow_motion, ActionModel::instantaneous};
};

/// Values are interpreted in the unit already attached to the swept field.
std::string sweep_csv(const nlohmann::json& doc, const SweepRequest& request);

/// Parses "lo:hi".
std::pair<double, double> parse_range(const std::string& text);

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace medent::cli

#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include <nlohmann/json.hpp>

#include "medent/action.hpp"
#include "medent/kinematics.hpp"
#include "medent/scenarios.hpp"

namespace medent::cli {

/// Scenario file rejected; path is a JSON pointer to the offending field.
class SchemaError : public std::runtime_error {
 public:
  SchemaError(std::string path, const std::string& message)
      : std::runtime_error("schema error at " + (path.empty() ? std::string("/") : path) + ": " + message),
        path_(std::move(path)) {}
  const std::string& path() const { return path_; }

 private:
  std::string path_;
};

enum class Dimension { time, length, mass, charge, velocity, dimensionless };

/// Quantity in SI. Accepts a bare number (already SI), a string "value unit",
/// or an object {"value": v, "unit": "u"}. Units: s, ns, m, cm, um, nm, kg, C,
/// e, m_e, c-fraction. c is needed for c-fraction.
double parse_quantity(const nlohmann::json& node, Dimension dim, const std::string& path, double c);

/// Unit name attached to a quantity node, or "" for bare SI numbers.
std::string quantity_unit(const nlohmann::json& node);

struct ScenarioFile {
  BranchScenario scenario;
  std::optional<ActionModel> model;
  std::optional<double> tolerance;
  std::optional<BMVParams> builder;  // set when the file uses a builder shorthand
};

/// Parses and validates a scenario document. Throws SchemaError.
ScenarioFile load_scenario(const nlohmann::json& doc);

/// Reads and parses a file. Throws SchemaError (path "/" for I/O or JSON syntax errors).
nlohmann::json read_json_file(const std::string& filename);

}  // namespace medent::cli

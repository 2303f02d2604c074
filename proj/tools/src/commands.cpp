#include "medent/cli/commands.hpp"

#include <CLI11.hpp>

#include <charconv>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "medent/cli/validation.hpp"
#include "medent/error.hpp"
#include "medent/scenarios.hpp"

namespace medent::cli {

using nlohmann::json;
using nlohmann::ordered_json;

std::string format_double(double x) {
  char buf[64];
  const auto r = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, r.ptr);
}

double resolve_tolerance(const ScenarioFile& file, std::optional<double> flag) {
  if (flag) {
    if (!(*flag > 0.0) || !std::isfinite(*flag)) throw SchemaError("--tol", "tolerance must be positive");
    return *flag;
  }
  if (file.tolerance) return *file.tolerance;
  if (const char* env = std::getenv(kToleranceEnv); env && *env) {
    double v = 0.0;
    const char* end = env + std::char_traits<char>::length(env);
    const auto r = std::from_chars(env, end, v);
    if (r.ec != std::errc() || r.ptr != end || !(v > 0.0) || !std::isfinite(v)) {
      throw SchemaError(kToleranceEnv, "expected a positive number, got \"" + std::string(env) + "\"");
    }
    return v;
  }
  return kDefaultTolerance;
}

ActionModel resolve_model(const ScenarioFile& file, std::optional<ActionModel> flag) {
  if (flag) return *flag;
  return file.model.value_or(ActionModel::exact);
}

PhaseTable compute_phases(const ScenarioFile& file, ActionModel model, double tol) {
  ActionSettings settings;
  settings.tol = tol;
  return phase_table(file.scenario, model, settings);
}

ordered_json phase_json(const PhaseTable& table, double tol) {
  ordered_json out;
  out["scenario_digest"] = table.scenario_digest;
  out["model"] = to_string(table.model);
  out["tolerance"] = tol;
  ordered_json entries = ordered_json::array();
  for (std::size_t i = 0; i < table.entries.size(); ++i) {
    ordered_json e;
    e["sigma"] = SpinConfiguration::from_index(i, table.particles).label();
    e["phase"] = table.entries[i].phase;
    e["quad_error"] = table.entries[i].quad_error;
    entries.push_back(std::move(e));
  }
  out["entries"] = std::move(entries);
  if (table.particles == 2) {
    const double dp = delta_phi(table);
    out["delta_phi"] = dp;
    out["delta_phi_wrapped"] = wrap_phase(dp);
  }
  return out;
}

std::string phase_csv(const PhaseTable& table) {
  std::ostringstream out;
  out << "sigma,phase,quad_error,model,scenario_digest\n";
  for (std::size_t i = 0; i < table.entries.size(); ++i) {
    out << SpinConfiguration::from_index(i, table.particles).label() << ',' << format_double(table.entries[i].phase)
        << ',' << format_double(table.entries[i].quad_error) << ',' << to_string(table.model) << ','
        << table.scenario_digest << '\n';
  }
  return out.str();
}

SpinState parse_amplitudes(const std::string& text, std::size_t particles) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error&) {
    throw SchemaError("--amplitudes", "expected a JSON array");
  }
  const std::size_t dim = std::size_t{1} << particles;
  if (!doc.is_array() || doc.size() != dim) {
    throw SchemaError("--amplitudes", "expected an array of " + std::to_string(dim) + " amplitudes");
  }
  std::vector<std::complex<double>> amps;
  for (std::size_t i = 0; i < dim; ++i) {
    const json& a = doc[i];
    const std::string path = "--amplitudes/" + std::to_string(i);
    if (a.is_number()) {
      amps.emplace_back(a.get<double>(), 0.0);
    } else if (a.is_array() && a.size() == 2 && a[0].is_number() && a[1].is_number()) {
      amps.emplace_back(a[0].get<double>(), a[1].get<double>());
    } else {
      throw SchemaError(path, "expected a number or [re, im]");
    }
  }
  try {
    return SpinState::normalized(std::move(amps));
  } catch (const InvalidInput& e) {
    throw SchemaError("--amplitudes", e.what());
  }
}

Bipartition parse_partition(const std::string& text, std::size_t particles) {
  Bipartition p;
  std::istringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    std::size_t v = 0;
    const auto r = std::from_chars(item.data(), item.data() + item.size(), v);
    if (r.ec != std::errc() || r.ptr != item.data() + item.size() || v >= particles) {
      throw SchemaError("--partition", "expected comma-separated particle indices below " + std::to_string(particles));
    }
    p.subsystem.push_back(v);
  }
  if (p.subsystem.empty()) throw SchemaError("--partition", "empty subsystem");
  return p;
}

ordered_json entangle_json(const PhaseTable& table, const SpinState& initial, const Bipartition& partition,
                           double tol) {
  const double additivity_tol = 10.0 * tol;
  const auto report = entanglement_report(initial, table, additivity_tol, partition);
  ordered_json out;
  out["scenario_digest"] = table.scenario_digest;
  out["model"] = to_string(table.model);
  out["tolerance"] = tol;
  out["negativity"] = report.negativity;
  out["concurrence"] = report.concurrence ? ordered_json(*report.concurrence) : ordered_json(nullptr);
  out["is_separable_by_phase_additivity"] = report.is_separable_by_phase_additivity;
  out["phase_residual"] = report.phase_residual;
  out["additivity_tolerance"] = additivity_tol;
  ordered_json sub = ordered_json::array();
  for (auto a : partition.subsystem) sub.push_back(a);
  out["partition"] = std::move(sub);
  if (table.particles == 2) out["delta_phi"] = delta_phi(table);
  ordered_json phases = ordered_json::array();
  for (double p : table.phases()) phases.push_back(p);
  out["phases"] = std::move(phases);
  return out;
}

std::pair<double, double> parse_range(const std::string& text) {
  const auto colon = text.find(':');
  const auto num = [&](std::string_view s) {
    double v = 0.0;
    const auto r = std::from_chars(s.data(), s.data() + s.size(), v);
    if (r.ec != std::errc() || r.ptr != s.data() + s.size() || !std::isfinite(v)) {
      throw SchemaError("--range", "expected \"lo:hi\", got \"" + text + "\"");
    }
    return v;
  };
  if (colon == std::string::npos) throw SchemaError("--range", "expected \"lo:hi\", got \"" + text + "\"");
  const std::string_view all(text);
  return {num(all.substr(0, colon)), num(all.substr(colon + 1))};
}

namespace {

json::json_pointer to_pointer(const std::string& path) {
  std::string p = path;
  if (p.empty() || p[0] != '/') {
    for (auto& ch : p) {
      if (ch == '.') ch = '/';
    }
    p = "/" + p;
  }
  try {
    return json::json_pointer(p);
  } catch (const json::exception&) {
    throw SchemaError("--param", "invalid parameter path '" + path + "'");
  }
}

json with_value(const json& node, double v) {
  if (node.is_string()) return format_double(v) + " " + quantity_unit(node);
  if (node.is_object()) {
    json out = node;
    out["value"] = v;
    return out;
  }
  return v;
}

}  // namespace

std::string sweep_csv(const json& doc, const SweepRequest& req) {
  if (req.steps < 1) throw SchemaError("--steps", "must be at least 1");
  const auto ptr = to_pointer(req.param);
  if (!doc.contains(ptr)) throw SchemaError(ptr.to_string(), "swept parameter not present in the scenario");
  const json& original = doc.at(ptr);
  if (!(original.is_number() || original.is_string() || (original.is_object() && original.contains("value")))) {
    throw SchemaError(ptr.to_string(), "swept parameter must be a quantity");
  }
  std::ostringstream out;
  out << kSweepHeader << '\n';
  for (int i = 0; i < req.steps; ++i) {
    const double v = req.steps == 1 ? req.lo : req.lo + (req.hi - req.lo) * double(i) / double(req.steps - 1);
    json variant = doc;
    variant[ptr] = with_value(original, v);
    const ScenarioFile file = load_scenario(variant);
    if (file.scenario.size() != 2) throw SchemaError("/particles", "sweep needs exactly two particles");
    const double tol = resolve_tolerance(file, req.tol);
    for (ActionModel model : req.models) {
      const PhaseTable table = compute_phases(file, model, tol);
      const double neg = negativity(evolve(SpinState::uniform(2), table));
      out << format_double(v);
      for (const auto& e : table.entries) out << ',' << format_double(e.phase);
      out << ',' << format_double(delta_phi(table)) << ',' << format_double(neg) << ',' << to_string(model) << '\n';
    }
  }
  return out.str();
}

namespace {

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << text;
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw SchemaError("--out", "cannot write '" + path + "'");
  f << text;
}

std::optional<ActionModel> model_flag(const std::string& s) {
  if (s.empty()) return std::nullopt;
  try {
    return parse_action_model(s);
  } catch (const InvalidInput& e) {
    throw SchemaError("--model", e.what());
  }
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"medent: entanglement phases from locally mediated interactions"};
  app.require_subcommand(1);
  app.set_version_flag("--version", "medent 0.1.0");

  std::string file, model, out_path, format = "json", amplitudes, partition = "0", param, range, fault = "none";
  std::optional<double> tol;
  int steps = 1;
  double tol_scale = 1.0;

  auto* phase_cmd = app.add_subcommand("phase", "Phase table for every spin configuration");
  phase_cmd->add_option("file", file, "Scenario JSON")->required();
  phase_cmd->add_option("--model", model, "exact | slow_motion | instantaneous");
  phase_cmd->add_option("--tol", tol, "Absolute phase tolerance, radians");
  phase_cmd->add_option("--out", out_path, "Output file (default stdout)");
  phase_cmd->add_option("--format", format, "json | csv")->check(CLI::IsMember({"json", "csv"}));

  auto* ent_cmd = app.add_subcommand("entangle", "Negativity, concurrence and additivity verdict");
  ent_cmd->add_option("file", file, "Scenario JSON")->required();
  ent_cmd->add_option("--model", model, "exact | slow_motion | instantaneous");
  ent_cmd->add_option("--tol", tol, "Absolute phase tolerance, radians");
  ent_cmd->add_option("--amplitudes", amplitudes, "JSON array of initial amplitudes (default uniform)");
  ent_cmd->add_option("--partition", partition, "Particles on one side of the cut, comma separated");
  ent_cmd->add_option("--out", out_path, "Output file (default stdout)");

  auto* sweep_cmd = app.add_subcommand("sweep", "Scan one scenario field, all three models");
  sweep_cmd->add_option("file", file, "Scenario JSON")->required();
  sweep_cmd->add_option("--param", param, "Field path, e.g. builder.params.T")->required();
  sweep_cmd->add_option("--range", range, "lo:hi in the field's own unit")->required();
  sweep_cmd->add_option("--steps", steps, "Number of values")->check(CLI::PositiveNumber);
  sweep_cmd->add_option("--tol", tol, "Absolute phase tolerance, radians");
  sweep_cmd->add_option("--model", model, "Restrict to one model");
  sweep_cmd->add_option("--out", out_path, "Output file (default stdout)");

  auto* val_cmd = app.add_subcommand("validate", "Built-in invariant checks");
  val_cmd->add_option("--tol-scale", tol_scale, "Scale every tolerance and bound");
  val_cmd->add_option("--inject-fault", fault, "none | flip_trace_reversal | drop_lorentz_factors");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitSchema;
  }

  try {
    if (*phase_cmd || *ent_cmd) {
      const ScenarioFile sf = load_scenario(read_json_file(file));
      if (sf.builder && outside_small_displacement_regime(*sf.builder)) {
        err << "medent: warning: delta_x / d > 0.3, closed-form estimators are unreliable here\n";
      }
      const double t = resolve_tolerance(sf, tol);
      const ActionModel m = resolve_model(sf, model_flag(model));
      const std::size_t n = sf.scenario.size();
      std::optional<SpinState> initial;
      std::optional<Bipartition> cut;
      if (*ent_cmd) {  // reject bad flags before any integration
        initial = amplitudes.empty() ? SpinState::uniform(n) : parse_amplitudes(amplitudes, n);
        cut = parse_partition(partition, n);
      }
      const PhaseTable table = compute_phases(sf, m, t);
      if (*phase_cmd) {
        emit(format == "csv" ? phase_csv(table) : phase_json(table, t).dump(2) + "\n", out_path, out);
      } else {
        emit(entangle_json(table, *initial, *cut, t).dump(2) + "\n", out_path, out);
      }
    } else if (*sweep_cmd) {
      SweepRequest req;
      req.param = param;
      std::tie(req.lo, req.hi) = parse_range(range);
      req.steps = steps;
      req.tol = tol;
      if (auto m = model_flag(model)) req.models = {*m};
      emit(sweep_csv(read_json_file(file), req), out_path, out);
    } else if (*val_cmd) {
      ValidationOptions opts;
      try {
        opts.fault = parse_fault(fault);
      } catch (const InvalidInput& e) {
        throw SchemaError("--inject-fault", e.what());
      }
      if (!(tol_scale > 0.0)) throw SchemaError("--tol-scale", "must be positive");
      opts.tol_scale = tol_scale;
      const auto results = run_validation(opts);
      bool all = true;
      for (const auto& r : results) {
        all = all && r.passed;
        out << (r.passed ? "PASS " : "FAIL ") << r.name << "  deviation=" << format_double(r.deviation)
            << " bound=" << format_double(r.bound);
        if (!r.detail.empty()) out << "  (" << r.detail << ")";
        out << '\n';
      }
      out << (all ? "all checks passed" : "some checks FAILED") << " [fault=" << to_string(opts.fault)
          << ", tol_scale=" << format_double(tol_scale) << "]\n";
      return all ? kExitOk : kExitNumerical;
    }
  } catch (const SchemaError& e) {
    err << "medent: " << e.what() << '\n';
    return kExitSchema;
  } catch (const NumericalFailure& e) {
    err << "medent: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  } catch (const InvalidInput& e) {
    err << "medent: numerical failure: " << e.what() << '\n';
    return kExitNumerical;
  }
  return kExitOk;
}

}  // namespace medent::cli

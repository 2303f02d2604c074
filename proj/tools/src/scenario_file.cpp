#include "medent/cli/scenario_file.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "medent/error.hpp"

namespace medent::cli {

using nlohmann::json;

namespace {

struct UnitInfo {
  Dimension dim;
  double scale;  // SI per unit; velocity scale is multiplied by c
};

const std::map<std::string, UnitInfo>& unit_table() {
  static const std::map<std::string, UnitInfo> table = {
      {"s", {Dimension::time, 1.0}},
      {"ns", {Dimension::time, 1e-9}},
      {"m", {Dimension::length, 1.0}},
      {"cm", {Dimension::length, 1e-2}},
      {"um", {Dimension::length, 1e-6}},
      {"nm", {Dimension::length, 1e-9}},
      {"kg", {Dimension::mass, 1.0}},
      {"m_e", {Dimension::mass, codata::kElectronMass}},
      {"C", {Dimension::charge, 1.0}},
      {"e", {Dimension::charge, codata::kElementaryCharge}},
      {"c-fraction", {Dimension::velocity, 1.0}},
  };
  return table;
}

const char* dimension_name(Dimension d) {
  switch (d) {
    case Dimension::time:
      return "time";
    case Dimension::length:
      return "length";
    case Dimension::mass:
      return "mass";
    case Dimension::charge:
      return "charge";
    case Dimension::velocity:
      return "velocity";
    case Dimension::dimensionless:
      return "dimensionless";
  }
  return "?";
}

std::string child(const std::string& path, const std::string& key) { return path + "/" + key; }
std::string child(const std::string& path, std::size_t i) { return path + "/" + std::to_string(i); }

void require_object(const json& node, const std::string& path) {
  if (!node.is_object()) throw SchemaError(path, "expected an object");
}

void check_keys(const json& node, const std::string& path, const std::set<std::string>& allowed) {
  require_object(node, path);
  for (const auto& [key, value] : node.items()) {
    if (!allowed.count(key)) throw SchemaError(child(path, key), "unknown field");
  }
}

const json& required(const json& node, const std::string& key, const std::string& path) {
  if (!node.contains(key)) throw SchemaError(child(path, key), "missing required field");
  return node.at(key);
}

double parse_number(const json& node, const std::string& path) {
  if (!node.is_number()) throw SchemaError(path, "expected a number");
  const double v = node.get<double>();
  if (!std::isfinite(v)) throw SchemaError(path, "expected a finite number");
  return v;
}

std::string parse_string(const json& node, const std::string& path) {
  if (!node.is_string()) throw SchemaError(path, "expected a string");
  return node.get<std::string>();
}

Vec3 parse_vec3(const json& node, const std::string& path, double scale) {
  if (!node.is_array() || node.size() != 3) throw SchemaError(path, "expected an array of three numbers");
  return {parse_number(node[0], child(path, 0)) * scale, parse_number(node[1], child(path, 1)) * scale,
          parse_number(node[2], child(path, 2)) * scale};
}

double unit_scale(const std::string& unit, Dimension dim, const std::string& path, double c) {
  const auto it = unit_table().find(unit);
  if (it == unit_table().end()) throw SchemaError(path, "unknown unit '" + unit + "'");
  if (it->second.dim != dim) {
    throw SchemaError(path, "unit '" + unit + "' is not a " + std::string(dimension_name(dim)) + " unit");
  }
  return dim == Dimension::velocity ? it->second.scale * c : it->second.scale;
}

PhysicalConstants parse_constants(const json& doc) {
  PhysicalConstants base;
  if (!doc.contains("constants")) return base;
  const std::string path = "/constants";
  const json& node = doc.at("constants");
  check_keys(node, path, {"c", "G", "hbar", "epsilon0"});
  const auto get = [&](const char* key, double fallback) {
    return node.contains(key) ? parse_number(node.at(key), child(path, key)) : fallback;
  };
  try {
    return PhysicalConstants(get("c", base.c()), get("G", base.G()), get("hbar", base.hbar()),
                             get("epsilon0", base.epsilon0()));
  } catch (const InvalidInput& e) {
    throw SchemaError(path, e.what());
  }
}

Interaction parse_interaction(const json& node, const std::string& path) {
  const std::string s = parse_string(node, path);
  if (s == "gravity") return Interaction::gravity;
  if (s == "electromagnetism" || s == "em") return Interaction::electromagnetism;
  throw SchemaError(path, "expected \"gravity\" or \"electromagnetism\"");
}

// Worldline on a provisional domain; history is attached once the scenario's
// length scale is known.
Worldline parse_worldline(const json& node, const std::string& path, const TimeWindow& window, double c) {
  check_keys(node, path, {"static", "segments", "length_unit", "time_unit"});
  const std::string lunit = node.contains("length_unit") ? parse_string(node.at("length_unit"), child(path, "length_unit")) : "m";
  const std::string tunit = node.contains("time_unit") ? parse_string(node.at("time_unit"), child(path, "time_unit")) : "s";
  const double ls = unit_scale(lunit, Dimension::length, child(path, "length_unit"), c);
  const double ts = unit_scale(tunit, Dimension::time, child(path, "time_unit"), c);

  if (node.contains("static") == node.contains("segments")) {
    throw SchemaError(path, "worldline needs exactly one of \"static\" or \"segments\"");
  }
  if (node.contains("static")) {
    const double t1 = window.t_f > window.t_i ? window.t_f : window.t_i + 1.0;
    return Worldline::stationary(parse_vec3(node.at("static"), child(path, "static"), ls), window.t_i, t1);
  }
  const std::string spath = child(path, "segments");
  const json& segs = node.at("segments");
  if (!segs.is_array() || segs.empty()) throw SchemaError(spath, "expected a nonempty array");
  std::vector<Segment> out;
  for (std::size_t i = 0; i < segs.size(); ++i) {
    const std::string p = child(spath, i);
    check_keys(segs[i], p, {"t_start", "t_end", "coefficients"});
    Segment s;
    s.t_start = parse_quantity(required(segs[i], "t_start", p), Dimension::time, child(p, "t_start"), c);
    s.t_end = parse_quantity(required(segs[i], "t_end", p), Dimension::time, child(p, "t_end"), c);
    const json& coeffs = required(segs[i], "coefficients", p);
    if (!coeffs.is_array() || coeffs.empty() || coeffs.size() > 4) {
      throw SchemaError(child(p, "coefficients"), "expected 1 to 4 coefficient vectors");
    }
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
      // coefficient k carries length_unit / time_unit^k
      s.coeffs[k] = parse_vec3(coeffs[k], child(child(p, "coefficients"), k), ls / std::pow(ts, double(k)));
    }
    out.push_back(s);
  }
  try {
    return Worldline(std::move(out), c);
  } catch (const InvalidInput& e) {
    throw SchemaError(spath, e.what());
  }
}

BMVParams parse_builder_params(const json& node, const std::string& path, Interaction interaction, double c) {
  check_keys(node, path, {"A", "d", "delta_x", "T", "t_hold", "ramp_fraction", "split"});
  BMVParams p;
  p.interaction = interaction;
  const Dimension adim = interaction == Interaction::gravity ? Dimension::mass : Dimension::charge;
  p.A = parse_quantity(required(node, "A", path), adim, child(path, "A"), c);
  p.d = parse_quantity(required(node, "d", path), Dimension::length, child(path, "d"), c);
  p.delta_x = parse_quantity(required(node, "delta_x", path), Dimension::length, child(path, "delta_x"), c);
  p.T = parse_quantity(required(node, "T", path), Dimension::time, child(path, "T"), c);
  if (node.contains("t_hold")) p.t_hold = parse_quantity(node.at("t_hold"), Dimension::time, child(path, "t_hold"), c);
  if (node.contains("ramp_fraction")) {
    p.ramp_fraction = parse_quantity(node.at("ramp_fraction"), Dimension::dimensionless, child(path, "ramp_fraction"), c);
  }
  if (node.contains("split")) {
    const std::string s = parse_string(node.at("split"), child(path, "split"));
    if (s == "symmetric") {
      p.split = SplitGeometry::symmetric;
    } else if (s == "one_sided") {
      p.split = SplitGeometry::one_sided;
    } else {
      throw SchemaError(child(path, "split"), "expected \"symmetric\" or \"one_sided\"");
    }
  }
  return p;
}

}  // namespace

std::string quantity_unit(const json& node) {
  if (node.is_string()) {
    std::istringstream in(node.get<std::string>());
    double v = 0.0;
    std::string unit;
    in >> v >> unit;
    return unit;
  }
  if (node.is_object() && node.contains("unit") && node.at("unit").is_string()) return node.at("unit").get<std::string>();
  return "";
}

double parse_quantity(const json& node, Dimension dim, const std::string& path, double c) {
  if (node.is_number()) return parse_number(node, path);
  double value = 0.0;
  std::string unit;
  if (node.is_string()) {
    std::istringstream in(node.get<std::string>());
    std::string extra;
    if (!(in >> value) || !(in >> unit) || (in >> extra)) {
      throw SchemaError(path, "expected \"<number> <unit>\", got \"" + node.get<std::string>() + "\"");
    }
  } else if (node.is_object()) {
    check_keys(node, path, {"value", "unit"});
    value = parse_number(required(node, "value", path), child(path, "value"));
    unit = parse_string(required(node, "unit", path), child(path, "unit"));
  } else {
    throw SchemaError(path, "expected a number, \"<number> <unit>\" or {value, unit}");
  }
  if (!std::isfinite(value)) throw SchemaError(path, "expected a finite number");
  if (dim == Dimension::dimensionless) throw SchemaError(path, "dimensionless field takes a bare number");
  return value * unit_scale(unit, dim, path, c);
}

ScenarioFile load_scenario(const json& doc) {
  check_keys(doc, "", {"constants", "interaction", "window", "particles", "builder", "model", "tolerance"});
  const PhysicalConstants k = parse_constants(doc);
  const double c = k.c();
  const Interaction interaction = parse_interaction(required(doc, "interaction", ""), "/interaction");

  std::optional<ActionModel> model;
  if (doc.contains("model")) {
    try {
      model = parse_action_model(parse_string(doc.at("model"), "/model"));
    } catch (const InvalidInput& e) {
      throw SchemaError("/model", e.what());
    }
  }
  std::optional<double> tolerance;
  if (doc.contains("tolerance")) {
    tolerance = parse_number(doc.at("tolerance"), "/tolerance");
    if (!(*tolerance > 0.0)) throw SchemaError("/tolerance", "tolerance must be positive");
  }

  if (doc.contains("builder") == doc.contains("particles")) {
    throw SchemaError("", "scenario needs exactly one of \"builder\" or \"particles\"");
  }

  if (doc.contains("builder")) {
    const json& b = doc.at("builder");
    check_keys(b, "/builder", {"type", "params"});
    const std::string type = parse_string(required(b, "type", "/builder"), "/builder/type");
    if (type != "bmv" && type != "spacelike") throw SchemaError("/builder/type", "expected \"bmv\" or \"spacelike\"");
    if (doc.contains("window")) throw SchemaError("/window", "builders define their own window");
    const BMVParams params = parse_builder_params(required(b, "params", "/builder"), "/builder/params", interaction, c);
    try {
      BranchScenario s = type == "bmv" ? build_bmv(params, k) : build_spacelike(params, k);
      return {std::move(s), model, tolerance, params};
    } catch (const InvalidInput& e) {
      throw SchemaError("/builder/params", e.what());
    }
  }

  const json& win = required(doc, "window", "");
  check_keys(win, "/window", {"t_i", "t_f"});
  const TimeWindow window{parse_quantity(required(win, "t_i", "/window"), Dimension::time, "/window/t_i", c),
                          parse_quantity(required(win, "t_f", "/window"), Dimension::time, "/window/t_f", c)};
  if (!(window.t_f >= window.t_i)) throw SchemaError("/window", "t_f must not precede t_i");

  const json& parts = doc.at("particles");
  if (!parts.is_array() || parts.empty()) throw SchemaError("/particles", "expected a nonempty array");
  struct Raw {
    double mass;
    double charge;
    Worldline up;
    Worldline down;
  };
  std::vector<Raw> raw;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    const std::string p = child("/particles", i);
    check_keys(parts[i], p, {"mass", "charge", "up", "down"});
    const double mass = parts[i].contains("mass") ? parse_quantity(parts[i].at("mass"), Dimension::mass, child(p, "mass"), c) : 0.0;
    const double charge =
        parts[i].contains("charge") ? parse_quantity(parts[i].at("charge"), Dimension::charge, child(p, "charge"), c) : 0.0;
    Worldline up = parse_worldline(required(parts[i], "up", p), child(p, "up"), window, c);
    Worldline down = parts[i].contains("down") ? parse_worldline(parts[i].at("down"), child(p, "down"), window, c) : up;
    raw.push_back(Raw{mass, charge, std::move(up), std::move(down)});
  }

  // static history long enough for every retarded time in the window
  double scale = 0.0;
  for (std::size_t a = 0; a < raw.size(); ++a) {
    for (std::size_t b = a + 1; b < raw.size(); ++b) {
      for (const Worldline* wa : {&raw[a].up, &raw[a].down}) {
        for (const Worldline* wb : {&raw[b].up, &raw[b].down}) {
          const double t = std::max({window.t_i, wa->t_start(), wb->t_start()});
          if (wa->contains(t) && wb->contains(t)) scale = std::max(scale, norm(wa->position(t) - wb->position(t)));
        }
      }
    }
  }
  const double history = window.t_i - 2.0 * scale / c - 0.1 * (window.t_f - window.t_i);
  std::vector<Particle> particles;
  for (std::size_t i = 0; i < raw.size(); ++i) {
    const auto extend = [&](const Worldline& w) {
      try {
        Worldline out = w.t_start() > history ? w.extended_back(history) : w;
        return out.t_end() < window.t_f ? out.extended_forward(window.t_f) : out;
      } catch (const InvalidInput& e) {
        throw SchemaError(child("/particles", i), e.what());
      }
    };
    particles.push_back({raw[i].mass, raw[i].charge, extend(raw[i].up), extend(raw[i].down)});
  }
  try {
    return {BranchScenario(std::move(particles), interaction, window, k), model, tolerance, std::nullopt};
  } catch (const InvalidInput& e) {
    throw SchemaError("/particles", e.what());
  }
}

json read_json_file(const std::string& filename) {
  std::ifstream in(filename);
  if (!in) throw SchemaError("", "cannot open scenario file '" + filename + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw SchemaError("", std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace medent::cli

#include "medent/action.hpp"

#include <algorithm>
#include <cinttypes>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <future>
#include <numbers>

#include "medent/error.hpp"
#include "medent/retardation.hpp"

namespace medent {

namespace {

double retardation_tol(const BranchScenario& scenario, const ActionSettings& settings) {
  return settings.retardation_tol > 0.0 ? settings.retardation_tol : default_retardation_tolerance(scenario);
}

void check_pair(const BranchScenario& scenario, const SpinConfiguration& sigma, std::size_t a, std::size_t b) {
  if (a == b) throw InvalidInput("self-interaction terms are excluded: a must differ from b");
  if (a >= scenario.size() || b >= scenario.size()) throw InvalidInput("particle index out of range");
  if (sigma.size() != scenario.size()) throw InvalidInput("spin configuration size mismatch");
}

// Velocity-free coupling of one ordered term: G m_a m_b / 2 or -k_e q_a q_b / 2.
double static_coupling(const BranchScenario& scenario, std::size_t a, std::size_t b) {
  const auto& k = scenario.constants();
  if (scenario.interaction() == Interaction::gravity) {
    return 0.5 * k.G() * scenario.particle(a).mass * scenario.particle(b).mass;
  }
  return -0.5 * k.k_e() * scenario.particle(a).charge * scenario.particle(b).charge;
}

class Fnv1a {
 public:
  void add_bytes(const void* data, std::size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (std::size_t i = 0; i < n; ++i) {
      hash_ ^= p[i];
      hash_ *= 1099511628211ULL;
    }
  }
  void add(double v) {
    if (v == 0.0) v = 0.0;  // fold -0.0
    std::uint64_t bits = 0;
    std::memcpy(&bits, &v, sizeof bits);
    add_bytes(&bits, sizeof bits);
  }
  void add(std::uint64_t v) { add_bytes(&v, sizeof v); }
  std::uint64_t value() const { return hash_; }

 private:
  std::uint64_t hash_ = 14695981039346656037ULL;
};

}  // namespace

const char* to_string(ActionModel model) {
  switch (model) {
    case ActionModel::exact:
      return "exact";
    case ActionModel::slow_motion:
      return "slow_motion";
    case ActionModel::instantaneous:
      return "instantaneous";
  }
  return "unknown";
}

ActionModel parse_action_model(const std::string& name) {
  if (name == "exact") return ActionModel::exact;
  if (name == "slow_motion") return ActionModel::slow_motion;
  if (name == "instantaneous") return ActionModel::instantaneous;
  throw InvalidInput("unknown action model '" + name + "' (expected exact, slow_motion or instantaneous)");
}

double integrand_exact(const BranchScenario& scenario, const SpinConfiguration& sigma, std::size_t a,
                       std::size_t b, double t, const ActionSettings& settings) {
  check_pair(scenario, sigma, a, b);
  const auto& k = scenario.constants();
  const double c = k.c();
  const RetardedPoint r = pair_retardation(scenario, sigma, a, b, t, retardation_tol(scenario, settings));
  const Kinematics4 ka = Kinematics4::from_velocity(r.source_velocity, c);
  const Kinematics4 kb = Kinematics4::from_velocity(scenario.worldline(b, sigma).velocity(t), c);
  if (scenario.interaction() == Interaction::gravity) {
    const double pref = k.G() / (c * c * c * c);
    return pref * scenario.particle(a).mass * scenario.particle(b).mass * settings.gravity_bilinear(ka, kb) /
           r.denom;
  }
  const double pref = k.k_e() / (2.0 * c * c);
  return pref * scenario.particle(a).charge * scenario.particle(b).charge * v_bilinear_em(ka, kb) / r.denom;
}

double integrand_slow_motion(const BranchScenario& scenario, const SpinConfiguration& sigma, std::size_t a,
                             std::size_t b, double t, const ActionSettings& settings) {
  check_pair(scenario, sigma, a, b);
  const RetardedPoint r = pair_retardation(scenario, sigma, a, b, t, retardation_tol(scenario, settings));
  return static_coupling(scenario, a, b) / r.d;
}

double integrand_instantaneous(const BranchScenario& scenario, const SpinConfiguration& sigma,
                               std::size_t a, std::size_t b, double t) {
  check_pair(scenario, sigma, a, b);
  const double d = norm(scenario.worldline(b, sigma).position(t) - scenario.worldline(a, sigma).position(t));
  if (!(d > 0.0)) throw InvalidInput("particles coincide");
  return static_coupling(scenario, a, b) / d;
}

double integrand(ActionModel model, const BranchScenario& scenario, const SpinConfiguration& sigma,
                 std::size_t a, std::size_t b, double t, const ActionSettings& settings) {
  switch (model) {
    case ActionModel::exact:
      return integrand_exact(scenario, sigma, a, b, t, settings);
    case ActionModel::slow_motion:
      return integrand_slow_motion(scenario, sigma, a, b, t, settings);
    case ActionModel::instantaneous:
      return integrand_instantaneous(scenario, sigma, a, b, t);
  }
  throw InvalidInput("unknown action model");
}

std::vector<double> kink_times(const BranchScenario& scenario, const SpinConfiguration& sigma,
                               std::size_t a, std::size_t b, ActionModel model, double t0, double t1,
                               const ActionSettings& settings) {
  check_pair(scenario, sigma, a, b);
  const Worldline& source = scenario.worldline(a, sigma);
  const Worldline& target = scenario.worldline(b, sigma);
  std::vector<double> knots = target.breakpoints();
  if (model == ActionModel::instantaneous) {
    const auto extra = source.breakpoints();
    knots.insert(knots.end(), extra.begin(), extra.end());
  } else {
    const double c = scenario.constants().c();
    const double tol = retardation_tol(scenario, settings);
    for (double tk : source.breakpoints()) {
      if (tk > t1) break;
      if (auto arrival = lightcone_arrival(source.position(tk), tk, target, c, tol)) {
        knots.push_back(*arrival);
      }
    }
  }
  return clean_knots(std::move(knots), t0, t1);
}

QuadratureResult ordered_pair_action(const BranchScenario& scenario, const SpinConfiguration& sigma,
                                     std::size_t a, std::size_t b, ActionModel model, double t0, double t1,
                                     double abs_tol, const ActionSettings& settings) {
  const auto knots = kink_times(scenario, sigma, a, b, model, t0, t1, settings);
  const auto f = [&](double t) { return integrand(model, scenario, sigma, a, b, t, settings); };
  return integrate(f, knots, {abs_tol, settings.max_panels});
}

PhaseValue phase(const BranchScenario& scenario, const SpinConfiguration& sigma, ActionModel model,
                 const ActionSettings& settings) {
  if (!(settings.tol > 0.0)) throw InvalidInput("phase tolerance must be positive");
  if (sigma.size() != scenario.size()) throw InvalidInput("spin configuration size mismatch");
  const std::size_t n = scenario.size();
  if (n < 2) return {};
  const double hbar = scenario.constants().hbar();
  const auto& w = scenario.window();
  const double pair_tol = settings.tol * hbar / static_cast<double>(n * (n - 1));

  CompensatedSum action;
  CompensatedSum error;
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (a == b) continue;
      const auto r = ordered_pair_action(scenario, sigma, a, b, model, w.t_i, w.t_f, pair_tol, settings);
      action.add(r.value);
      error.add(r.error);
    }
  }
  return {action.value() / hbar, error.value() / hbar};
}

std::vector<double> PhaseTable::phases() const {
  std::vector<double> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.phase);
  return out;
}

PhaseTable phase_table(const BranchScenario& scenario, ActionModel model, const ActionSettings& settings) {
  const auto configs = SpinConfiguration::all(scenario.size());
  PhaseTable table;
  table.particles = scenario.size();
  table.model = model;
  table.scenario_digest = scenario_digest(scenario);
  table.entries.resize(configs.size());
  if (settings.parallel && configs.size() > 1) {
    std::vector<std::future<PhaseValue>> jobs;
    jobs.reserve(configs.size());
    for (const auto& sigma : configs) {
      jobs.push_back(std::async(std::launch::async, [&, sigma] { return phase(scenario, sigma, model, settings); }));
    }
    for (std::size_t i = 0; i < jobs.size(); ++i) table.entries[i] = jobs[i].get();
  } else {
    for (std::size_t i = 0; i < configs.size(); ++i) table.entries[i] = phase(scenario, configs[i], model, settings);
  }
  return table;
}

std::string scenario_digest(const BranchScenario& scenario) {
  Fnv1a h;
  const auto& k = scenario.constants();
  for (double v : {k.c(), k.G(), k.hbar(), k.epsilon0(), scenario.window().t_i, scenario.window().t_f}) h.add(v);
  h.add(static_cast<std::uint64_t>(scenario.interaction()));
  h.add(static_cast<std::uint64_t>(scenario.size()));
  for (const auto& p : scenario.particles()) {
    h.add(p.mass);
    h.add(p.charge);
    for (const Worldline* w : {&p.up, &p.down}) {
      h.add(static_cast<std::uint64_t>(w->segments().size()));
      for (const auto& s : w->segments()) {
        h.add(s.t_start);
        h.add(s.t_end);
        for (const auto& c : s.coeffs) {
          h.add(c.x);
          h.add(c.y);
          h.add(c.z);
        }
      }
    }
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016" PRIx64, h.value());
  return buf;
}

double wrap_phase(double phi) {
  constexpr double two_pi = 2.0 * std::numbers::pi;
  double r = std::remainder(phi, two_pi);
  if (r <= -std::numbers::pi) r += two_pi;
  return r;
}

Tensor4 field_h(const BranchScenario& scenario, const SpinConfiguration& sigma, double t, const Vec3& x,
                const ActionSettings& settings) {
  if (sigma.size() != scenario.size()) throw InvalidInput("spin configuration size mismatch");
  const auto& k = scenario.constants();
  const double c = k.c();
  const double tol = retardation_tol(scenario, settings);
  const double pref = 4.0 * k.G() / (c * c * c * c);
  Tensor4 h{};
  for (std::size_t a = 0; a < scenario.size(); ++a) {
    const double m = scenario.particle(a).mass;
    if (m == 0.0) continue;
    const RetardedPoint r = retarded_time(scenario.worldline(a, sigma), x, t, c, tol);
    if (!(r.d > 0.0)) throw InvalidInput("field evaluated at a particle position");
    const Tensor4 vbar = trace_reversed(velocity_tensor(Kinematics4::from_velocity(r.source_velocity, c)));
    for (int mu = 0; mu < 4; ++mu)
      for (int nu = 0; nu < 4; ++nu) h[mu][nu] += pref * m * vbar[mu][nu] / r.denom;
  }
  return h;
}

}  // namespace medent

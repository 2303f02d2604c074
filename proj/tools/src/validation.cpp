#include "medent/cli/validation.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "medent/action.hpp"
#include "medent/entanglement.hpp"
#include "medent/error.hpp"
#include "medent/lorentz.hpp"
#include "medent/retardation.hpp"
#include "medent/scenarios.hpp"

namespace medent::cli {

namespace {

// trace reversal with the wrong sign
double flipped_bilinear(const Kinematics4& ka, const Kinematics4& kb) {
  const double dot = minkowski_dot(ka.v4, kb.v4);
  const double c2 = ka.v4[0] * ka.v4[0];
  return ka.gamma * kb.gamma * (dot * dot + 0.5 * c2 * c2);
}

// gamma factors omitted
double gammaless_bilinear(const Kinematics4& ka, const Kinematics4& kb) {
  const double dot = minkowski_dot(ka.v4, kb.v4);
  const double c2 = ka.v4[0] * ka.v4[0];
  return dot * dot - 0.5 * c2 * c2;
}

ActionSettings settings_for(const ValidationOptions& o, double tol) {
  ActionSettings s;
  s.tol = tol * o.tol_scale;
  if (o.fault == Fault::flip_trace_reversal) s.gravity_bilinear = &flipped_bilinear;
  if (o.fault == Fault::drop_lorentz_factors) s.gravity_bilinear = &gammaless_bilinear;
  return s;
}

CheckResult make(std::string name, double deviation, double bound, std::string detail = {}) {
  return {std::move(name), std::isfinite(deviation) && deviation <= bound, deviation, bound, std::move(detail)};
}

CheckResult guarded(const std::string& name, const std::function<CheckResult()>& body) {
  try {
    return body();
  } catch (const std::exception& e) {
    return {name, false, std::numeric_limits<double>::infinity(), 0.0, e.what()};
  }
}

// natural-ish constants: c = G = hbar = 1
PhysicalConstants unit_constants() { return PhysicalConstants::natural(); }

BranchScenario static_pair(const PhysicalConstants& k, double m, double d, double T) {
  const auto w0 = Worldline::stationary({0, 0, 0}, -2.0 * d / k.c(), T);
  const auto w1 = Worldline::stationary({d, 0, 0}, -2.0 * d / k.c(), T);
  return BranchScenario({{m, 0.0, w0, w0}, {m, 0.0, w1, w1}}, Interaction::gravity, {0.0, T}, k);
}

CheckResult check_retardation(const ValidationOptions& o) {
  return guarded("retardation_residuals", [&] {
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    const double c = 1.0;
    const double tol = 1e-12 * o.tol_scale;
    double worst = 0.0;
    for (int trial = 0; trial < 300; ++trial) {
      // uniform motion: closed-form light-cone root
      const Vec3 x0{u(rng), u(rng), u(rng)};
      Vec3 v{u(rng), u(rng), u(rng)};
      v = (0.9 * std::abs(u(rng)) / std::max(norm(v), 1e-300)) * v;
      const Worldline w({Segment::linear(-50.0, 10.0, x0 - 50.0 * v, v)}, c);  // x(t) = x0 + t v
      const Vec3 target{3.0 + u(rng), u(rng), u(rng)};
      const double t = 2.0 * u(rng);
      const auto r = retarded_time(w, target, t, c, tol);
      const Vec3 r0 = target - (x0 + t * v);  // offset from the source's current position
      const double a = c * c - dot(v, v);
      const double b = dot(r0, v);
      const double tau = (b + std::sqrt(b * b + a * norm2(r0))) / a;  // delay
      worst = std::max({worst, std::abs((t - r.t_ret) - tau) * c, r.residual});
    }
    return make("retardation_residuals", worst, 10.0 * tol, "uniform-motion roots vs closed form, 300 draws");
  });
}

CheckResult check_static_limit(const ValidationOptions& o) {
  return guarded("static_limit", [&] {
    const auto k = unit_constants();
    const double m = 1.0, d = 1.0, T = 10.0;
    const auto s = static_pair(k, m, d, T);
    const auto set = settings_for(o, 1e-11);
    const double expected = k.G() * m * m * T / (k.hbar() * d);
    const auto p = phase(s, SpinConfiguration::from_label("uu"), ActionModel::exact, set);
    return make("static_limit", std::abs(p.phase - expected), 10.0 * set.tol, "exact model, resting pair");
  });
}

CheckResult check_hierarchy(const ValidationOptions& o) {
  return guarded("model_hierarchy", [&] {
    const auto k = unit_constants();
    BMVParams p;
    p.A = 1.0;
    p.d = 1.0;
    p.delta_x = 0.2;
    p.T = 20.0;  // peak speed 3e-2 c
    p.t_hold = 1.0;
    p.ramp_fraction = 0.25;
    const auto s = build_bmv(p, k);
    const auto set = settings_for(o, 1e-9);
    const double beta = peak_speed(p) / k.c();
    double worst = 0.0, bound = 0.0;
    for (const auto& sigma : SpinConfiguration::all(2)) {
      const auto ex = phase(s, sigma, ActionModel::exact, set);
      const auto sm = phase(s, sigma, ActionModel::slow_motion, set);
      worst = std::max(worst, std::abs(ex.phase - sm.phase));
      bound = std::max(bound, beta * std::abs(sm.phase) + 2.0 * set.tol);
    }
    // all three agree on a resting pair
    const auto st = static_pair(k, 1.0, 1.0, 5.0);
    const auto sigma = SpinConfiguration::from_label("uu");
    const double e = phase(st, sigma, ActionModel::exact, set).phase;
    const double sl = phase(st, sigma, ActionModel::slow_motion, set).phase;
    const double in = phase(st, sigma, ActionModel::instantaneous, set).phase;
    const double spread = std::max({std::abs(e - sl), std::abs(e - in), std::abs(sl - in)});
    const double scaled = std::max(worst / bound, spread / (2.0 * set.tol));
    return make("model_hierarchy", scaled, 1.0, "exact vs slow-motion within beta |phi|; static models coincide");
  });
}

CheckResult check_boost(const ValidationOptions& o) {
  return guarded("boost_invariance", [&] {
    const auto k = unit_constants();
    BMVParams p;
    p.A = 1.0;
    p.d = 1.0;
    p.delta_x = 0.3;
    p.ramp_fraction = 0.25;
    p.T = 2.0;
    p.t_hold = 1.0;
    const auto s = build_bmv(p, k);
    const auto set = settings_for(o, 1e-10);
    const auto sigma = SpinConfiguration::from_label("ud");
    const double lab = phase(s, sigma, ActionModel::exact, set).phase;
    const LorentzBoost boost({0.2, 0.0, 0.0}, k.c());
    const auto b = boosted_phase(s, sigma, boost, ActionModel::exact, set, 1e-10);
    const double bound = 10.0 * (2.0 * set.tol + b.refit_error * std::abs(lab));
    return make("boost_invariance", std::abs(b.phase - lab), bound, "beta = 0.2 along the separation");
  });
}

CheckResult check_bell(const ValidationOptions& o) {
  return guarded("bell_state_oracle", [&] {
    const double tol = 1e-12 * o.tol_scale;
    const double r = 1.0 / std::sqrt(2.0);
    const double bell = negativity(SpinState({r, 0.0, 0.0, r}));
    double worst = std::abs(bell - 0.5);
    // uniform start with phases (0, x, 0, 0): 1/2 |sin(x/2)|
    for (double x : {0.3, 1.0, std::numbers::pi, 4.0}) {
      PhaseTable t;
      t.particles = 2;
      t.entries = {{0.0, 0.0}, {x, 0.0}, {0.0, 0.0}, {0.0, 0.0}};
      const double n = negativity(evolve(SpinState::uniform(2), t));
      worst = std::max(worst, std::abs(n - 0.5 * std::abs(std::sin(0.5 * x))));
    }
    return make("bell_state_oracle", worst, tol, "partial-transpose negativity vs closed forms");
  });
}

CheckResult check_spacelike(const ValidationOptions& o) {
  return guarded("spacelike_additivity", [&] {
    const auto k = unit_constants();
    BMVParams p;
    p.A = 1.0;
    p.d = 1.0;
    p.delta_x = 0.05;
    p.ramp_fraction = 0.25;
    p.T = 0.8;
    p.t_hold = 0.5;
    const auto s = build_spacelike(p, k);
    const auto set = settings_for(o, 1e-10);
    const auto table = phase_table(s, ActionModel::slow_motion, set);
    const auto check = phase_additivity_check(table, 10.0 * set.tol);
    return make("spacelike_additivity", check.residual, 10.0 * set.tol, "slow-motion phases at c T = 0.8 d");
  });
}

}  // namespace

Fault parse_fault(const std::string& name) {
  if (name == "none") return Fault::none;
  if (name == "flip_trace_reversal") return Fault::flip_trace_reversal;
  if (name == "drop_lorentz_factors") return Fault::drop_lorentz_factors;
  throw InvalidInput("unknown fault '" + name + "'");
}

const char* to_string(Fault fault) {
  switch (fault) {
    case Fault::none:
      return "none";
    case Fault::flip_trace_reversal:
      return "flip_trace_reversal";
    case Fault::drop_lorentz_factors:
      return "drop_lorentz_factors";
  }
  return "?";
}

std::vector<CheckResult> run_validation(const ValidationOptions& options) {
  if (!(options.tol_scale > 0.0) || !std::isfinite(options.tol_scale)) {
    throw InvalidInput("tolerance scale must be positive");
  }
  return {check_retardation(options), check_static_limit(options), check_hierarchy(options),
          check_boost(options),       check_bell(options),         check_spacelike(options)};
}

}  // namespace medent::cli

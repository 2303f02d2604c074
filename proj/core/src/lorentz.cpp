#include "medent/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "medent/error.hpp"
#include "medent/numerics.hpp"

namespace medent {

LorentzBoost::LorentzBoost(const Vec3& beta, double c) : beta_(beta), beta2_(norm2(beta)), c_(c) {
  if (!(beta2_ < 1.0)) throw InvalidInput("boost speed must be below c");
  gamma_ = 1.0 / std::sqrt(1.0 - beta2_);
}

LorentzBoost::Event LorentzBoost::apply(double t, const Vec3& x) const {
  if (beta2_ == 0.0) return {t, x};
  const double bx = dot(beta_, x);
  const double t_new = gamma_ * (t - bx / c_);
  const Vec3 x_new = x + ((gamma_ - 1.0) * bx / beta2_ - gamma_ * c_ * t) * beta_;
  return {t_new, x_new};
}

Vec3 LorentzBoost::apply_velocity(const Vec3& v) const {
  if (beta2_ == 0.0) return v;
  const double bv = dot(beta_, v);
  const double dt = gamma_ * (1.0 - bv / c_);
  const Vec3 dx = v + ((gamma_ - 1.0) * bv / beta2_ - gamma_ * c_) * beta_;
  return (1.0 / dt) * dx;
}

namespace {

struct Sample {
  double t_new;
  Vec3 x;
  Vec3 v;
};

// Lab time on segment s whose image has coordinate time t_new.
double lab_time(const Segment& s, const LorentzBoost& boost, double t_new, double c) {
  const auto f = [&](double t) { return boost.apply(t, s.position(t)).t - t_new; };
  const auto df = [&](double t) { return boost.gamma() * (1.0 - dot(boost.beta(), s.velocity(t)) / c); };
  const double span = s.t_end - s.t_start;
  const double ftol = 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(t_new), span);
  return solve_increasing(f, df, s.t_start, s.t_end, ftol).x;
}

Sample sample(const Segment& s, const LorentzBoost& boost, double t_new, double c) {
  const double t = lab_time(s, boost, t_new, c);
  return {t_new, boost.apply(t, s.position(t)).x, boost.apply_velocity(s.velocity(t))};
}

}  // namespace

BoostedWorldline boost_worldline(const Worldline& w, const LorentzBoost& boost, double c, double length_scale,
                                 double rel_tol) {
  double pos_scale = length_scale;
  for (const auto& s : w.segments()) {
    pos_scale = std::max({pos_scale, norm(boost.apply(s.t_start, s.position(s.t_start)).x),
                          norm(boost.apply(s.t_end, s.position(s.t_end)).x)});
  }

  std::vector<Segment> out;
  double worst_x = 0.0;
  double worst_v = 0.0;
  for (const auto& s : w.segments()) {
    const auto e0 = boost.apply(s.t_start, s.position(s.t_start));
    const auto e1 = boost.apply(s.t_end, s.position(s.t_end));
    const Sample first{e0.t, e0.x, boost.apply_velocity(s.velocity(s.t_start))};
    // left-limit velocity at the segment end
    const Sample last{e1.t, e1.x, boost.apply_velocity(s.velocity(s.t_end))};

    for (int pieces = 1;; pieces *= 2) {
      if (pieces > (1 << 16)) throw NumericalFailure("boost refit did not reach the requested tolerance");
      std::vector<Sample> knots{first};
      for (int k = 1; k < pieces; ++k) {
        knots.push_back(sample(s, boost, e0.t + (e1.t - e0.t) * k / pieces, c));
      }
      knots.push_back(last);

      std::vector<Segment> trial;
      double err_x = 0.0;
      double err_v = 0.0;
      for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
        const auto& p = knots[k];
        const auto& q = knots[k + 1];
        const Segment h = Segment::hermite(p.t_new, q.t_new, p.x, p.v, q.x, q.v);
        for (double frac : {0.25, 0.5, 0.75}) {
          const Sample probe = sample(s, boost, p.t_new + frac * (q.t_new - p.t_new), c);
          err_x = std::max(err_x, norm(h.position(probe.t_new) - probe.x) / pos_scale);
          err_v = std::max(err_v, norm(h.velocity(probe.t_new) - probe.v) / c);
        }
        trial.push_back(h);
      }
      const bool uniform_motion = s.coeffs[2] == Vec3{} && s.coeffs[3] == Vec3{};
      if ((err_x <= rel_tol && err_v <= rel_tol) || uniform_motion) {
        out.insert(out.end(), trial.begin(), trial.end());
        worst_x = std::max(worst_x, err_x);
        worst_v = std::max(worst_v, err_v);
        break;
      }
    }
  }
  // a shared breakpoint is mapped once per neighbouring segment; the two images
  // can differ in the last ulp
  for (std::size_t k = 1; k < out.size(); ++k) {
    out[k].t_start = out[k - 1].t_end;
  }
  return {Worldline(std::move(out), c), worst_x, worst_v};
}

BoostedScenario boost_scenario(const BranchScenario& scenario, const LorentzBoost& boost, double rel_tol) {
  const double c = scenario.constants().c();
  const double scale = scenario.length_scale();
  std::vector<Particle> particles;
  double worst = 0.0;
  double t_lo = -std::numeric_limits<double>::infinity();
  double t_hi = std::numeric_limits<double>::infinity();
  double image_lo = std::numeric_limits<double>::infinity();
  double image_hi = -std::numeric_limits<double>::infinity();
  for (const auto& p : scenario.particles()) {
    auto up = boost_worldline(p.up, boost, c, scale, rel_tol);
    auto down = boost_worldline(p.down, boost, c, scale, rel_tol);
    worst = std::max({worst, up.max_position_error, up.max_velocity_error, down.max_position_error,
                      down.max_velocity_error});
    for (const Worldline* lab : {&p.up, &p.down}) {
      image_lo = std::min(image_lo, boost.apply(scenario.window().t_i, lab->position(scenario.window().t_i)).t);
      image_hi = std::max(image_hi, boost.apply(scenario.window().t_f, lab->position(scenario.window().t_f)).t);
    }
    for (const Worldline* bw : {&up.worldline, &down.worldline}) {
      t_lo = std::max(t_lo, bw->t_start());
      t_hi = std::min(t_hi, bw->t_end());
    }
    particles.push_back({p.mass, p.charge, std::move(up.worldline), std::move(down.worldline)});
  }
  const TimeWindow window{std::max(t_lo, image_lo), std::min(t_hi, image_hi)};
  return {BranchScenario(std::move(particles), scenario.interaction(), window, scenario.constants()), worst};
}

BoostedPhase boosted_phase(const BranchScenario& scenario, const SpinConfiguration& sigma, const LorentzBoost& boost,
                           ActionModel model, const ActionSettings& settings, double rel_tol) {
  const auto boosted = boost_scenario(scenario, boost, rel_tol);
  const std::size_t n = scenario.size();
  const double hbar = scenario.constants().hbar();
  const double pair_tol = n > 1 ? settings.tol * hbar / double(n * (n - 1)) : 0.0;
  const TimeWindow& w = scenario.window();
  CompensatedSum sum;
  double err = 0.0;
  for (std::size_t b = 0; b < n; ++b) {
    const Worldline& lab = scenario.worldline(b, sigma);
    const double t0 = boost.apply(w.t_i, lab.position(w.t_i)).t;
    const double t1 = boost.apply(w.t_f, lab.position(w.t_f)).t;
    for (std::size_t a = 0; a < n; ++a) {
      if (a == b) continue;
      const auto r = ordered_pair_action(boosted.scenario, sigma, a, b, model, t0, t1, pair_tol, settings);
      sum.add(r.value);
      err += r.error;
    }
  }
  return {sum.value() / hbar, err / hbar, boosted.max_refit_error};
}

}  // namespace medent

#include "medent/retardation.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "medent/error.hpp"
#include "medent/numerics.hpp"

namespace medent {

namespace {

// Grows hi geometrically from a guess until f(hi) >= 0 or hi reaches limit.
// Returns false if the limit is hit without a sign change.
template <class F>
bool expand_bracket(const F& f, double guess, double limit, double& hi) {
  hi = std::min(guess, limit);
  for (int k = 0; k < 200; ++k) {
    if (f(hi) >= 0.0) return true;
    if (hi >= limit) return false;
    hi = std::min(2.0 * hi, limit);
  }
  return false;
}

}  // namespace

RetardedPoint retarded_time(const Worldline& source, const Vec3& target, double t, double c, double tol) {
  if (!(tol > 0.0)) throw InvalidInput("retardation tolerance must be positive");
  const double max_delay = t - source.t_start();
  if (max_delay < 0.0) throw InvalidInput("retarded time requested before the source worldline starts");

  // clamped: t - delay can round below t_start when delay == max_delay, and the
  // source may end before t
  const auto source_time = [&](double delay) { return std::clamp(t - delay, source.t_start(), source.t_end()); };
  const auto separation = [&](double delay) { return target - source.position(source_time(delay)); };
  const auto g = [&](double delay) { return c * delay - norm(separation(delay)); };
  const auto dg = [&](double delay) {
    const Vec3 d = separation(delay);
    const double n = norm(d);
    const Vec3 v = source.velocity(source_time(delay));
    return n > 0.0 ? c - dot(d, v) / n : c;
  };

  const double d_now = norm(separation(0.0));
  if (d_now <= tol) throw InvalidInput("retarded time: target coincides with the source");

  double hi = 0.0;
  if (!expand_bracket(g, 2.0 * d_now / c, max_delay, hi)) {
    std::ostringstream msg;
    msg << "retarded time at t = " << t << " lies before the source worldline start " << source.t_start();
    throw InvalidInput(msg.str());
  }
  const RootResult root = solve_increasing(g, dg, 0.0, hi, tol);

  RetardedPoint out;
  const double delay = root.x;
  if (t - delay > source.t_end()) {
    throw InvalidInput("retarded time lies after the end of the source worldline");
  }
  out.t_ret = source_time(delay);
  out.d_vec = separation(delay);
  out.d = norm(out.d_vec);
  out.source_velocity = source.velocity(out.t_ret);
  out.denom = out.d - dot(out.d_vec, out.source_velocity) / c;
  out.residual = std::abs(c * delay - out.d);
  return out;
}

double default_retardation_tolerance(const BranchScenario& scenario) {
  return 1e-12 * std::max(scenario.length_scale(), 1e-300);
}

RetardedPoint pair_retardation(const BranchScenario& scenario, const SpinConfiguration& sigma,
                               std::size_t a, std::size_t b, double t, double tol) {
  if (a == b) throw InvalidInput("pair_retardation requires distinct particles");
  if (sigma.size() != scenario.size()) throw InvalidInput("spin configuration size mismatch");
  const Vec3 target = scenario.worldline(b, sigma).position(t);
  return retarded_time(scenario.worldline(a, sigma), target, t, scenario.constants().c(), tol);
}

RetardedPoint pair_retardation(const BranchScenario& scenario, const SpinConfiguration& sigma,
                               std::size_t a, std::size_t b, double t) {
  return pair_retardation(scenario, sigma, a, b, t, default_retardation_tolerance(scenario));
}

std::optional<double> lightcone_arrival(const Vec3& x_emit, double t_emit, const Worldline& target, double c,
                                        double tol) {
  if (t_emit > target.t_end()) return std::nullopt;
  const double max_delay = target.t_end() - t_emit;
  const double t0 = std::max(t_emit, target.t_start());
  const double min_delay = t0 - t_emit;

  const auto target_time = [&](double delay) {
    return std::clamp(t_emit + delay, target.t_start(), target.t_end());
  };
  const auto g = [&](double delay) { return c * delay - norm(target.position(target_time(delay)) - x_emit); };
  const auto dg = [&](double delay) {
    const Vec3 d = target.position(target_time(delay)) - x_emit;
    const double n = norm(d);
    return n > 0.0 ? c - dot(d, target.velocity(target_time(delay))) / n : c;
  };
  if (g(min_delay) >= 0.0) return min_delay == 0.0 ? std::optional<double>(t_emit) : std::nullopt;

  const double guess = min_delay + 2.0 * norm(target.position(t0) - x_emit) / c;
  double hi = 0.0;
  if (!expand_bracket(g, std::max(guess, min_delay), max_delay, hi)) return std::nullopt;
  return target_time(solve_increasing(g, dg, min_delay, hi, tol).x);
}

}  // namespace medent

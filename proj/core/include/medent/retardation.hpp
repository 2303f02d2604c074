#pragma once

#include <cstddef>
#include <optional>

#include "medent/kinematics.hpp"
#include "medent/vec3.hpp"

namespace medent {

/// Solution of c (t - t_ret) = |target - x_source(t_ret)|.
struct RetardedPoint {
  double t_ret = 0.0;
  Vec3 d_vec{};         // target - x_source(t_ret)
  double d = 0.0;       // |d_vec|
  double denom = 0.0;   // d - d_vec . v_source(t_ret) / c
  double residual = 0.0;  // |c (t - t_ret) - d|, metres
  Vec3 source_velocity{};
};

/// Past-lightcone intersection of the event (t, target) with the source
/// worldline. The root is unique for subluminal sources. It is solved for the
/// delay t - t_ret, which keeps full relative precision when |t| >> d/c.
/// tol is an absolute bound on the returned residual, in metres.
///
/// Throws InvalidInput if target coincides with the source at time t or the
/// root lies before the start of the source worldline; NumericalFailure on
/// non-convergence.
RetardedPoint retarded_time(const Worldline& source, const Vec3& target, double t, double c, double tol);

/// Default residual tolerance: 1e-12 times the scenario length scale.
double default_retardation_tolerance(const BranchScenario& scenario);

/// Retarded interaction of source particle a onto target particle b at time t,
/// both on the branches selected by sigma. d_vec = x_b(t) - x_a(t_ab).
RetardedPoint pair_retardation(const BranchScenario& scenario, const SpinConfiguration& sigma,
                               std::size_t a, std::size_t b, double t, double tol);
RetardedPoint pair_retardation(const BranchScenario& scenario, const SpinConfiguration& sigma,
                               std::size_t a, std::size_t b, double t);

/// Time t >= t_emit at which the future lightcone of the event
/// (t_emit, x_emit) meets the target worldline, i.e. the t whose retarded
/// time is t_emit. std::nullopt if that happens after the target's domain.
std::optional<double> lightcone_arrival(const Vec3& x_emit, double t_emit, const Worldline& target, double c,
                                        double tol);

}  // namespace medent

#pragma once

#include <cstddef>

#include "medent/action.hpp"
#include "medent/kinematics.hpp"
#include "medent/vec3.hpp"

namespace medent {

/// Pure boost with velocity beta * c (|beta| < 1). Maps lab events (t, x)
/// into the frame moving with that velocity.
class LorentzBoost {
 public:
  LorentzBoost(const Vec3& beta, double c);

  double gamma() const { return gamma_; }
  const Vec3& beta() const { return beta_; }

  struct Event {
    double t;
    Vec3 x;
  };
  Event apply(double t, const Vec3& x) const;
  /// Transformed velocity of a particle with lab velocity v.
  Vec3 apply_velocity(const Vec3& v) const;

 private:
  Vec3 beta_;
  double beta2_;
  double gamma_;
  double c_;
};

struct BoostedWorldline {
  Worldline worldline;
  /// Largest position error at refinement probes, relative to the position scale.
  double max_position_error = 0.0;
  /// Largest velocity error at probes, relative to c.
  double max_velocity_error = 0.0;
};

/// Image of a worldline under a boost, refitted as piecewise cubic Hermite in
/// the new coordinate time. Images of original breakpoints are knots; each
/// segment is bisected until position and velocity errors at probe points are
/// below rel_tol (positions relative to max(|x|, length_scale), velocities
/// relative to c).
BoostedWorldline boost_worldline(const Worldline& w, const LorentzBoost& boost, double c, double length_scale,
                                 double rel_tol = 1e-10);

struct BoostedScenario {
  BranchScenario scenario;
  double max_refit_error = 0.0;
};

/// Boosts every branch worldline. The new window is the largest interval
/// covered by every boosted worldline that contains the images of the lab
/// window events.
BoostedScenario boost_scenario(const BranchScenario& scenario, const LorentzBoost& boost, double rel_tol = 1e-10);

struct BoostedPhase {
  double phase = 0.0;        // radians
  double quad_error = 0.0;   // radians
  double refit_error = 0.0;  // relative
};

/// Phase of one configuration evaluated in the boosted frame. Each target's
/// time integral runs over the image of its own lab-window endpoints.
BoostedPhase boosted_phase(const BranchScenario& scenario, const SpinConfiguration& sigma, const LorentzBoost& boost,
                           ActionModel model, const ActionSettings& settings = {}, double rel_tol = 1e-10);

}  // namespace medent

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "medent/kinematics.hpp"
#include "medent/numerics.hpp"

namespace medent {

/// Which approximation of the on-shell field action to integrate.
///  - exact: retarded Lienard-Wiechert form with full velocity dependence
///  - slow_motion: velocities dropped, retarded separation kept
///  - instantaneous: velocities dropped, separation at equal coordinate time
enum class ActionModel { exact, slow_motion, instantaneous };

const char* to_string(ActionModel model);
/// Throws InvalidInput for unknown names.
ActionModel parse_action_model(const std::string& name);

using GravityBilinear = double (*)(const Kinematics4&, const Kinematics4&);

struct ActionSettings {
  /// Absolute quadrature tolerance on each phase, radians.
  double tol = 1e-9;
  std::size_t max_panels = 50000;
  /// Residual bound for retarded-time solves, metres; <= 0 selects the scenario default.
  double retardation_tol = 0.0;
  /// Contraction used by the exact gravity integrand. Replaceable only so that
  /// validation can inject a convention fault.
  GravityBilinear gravity_bilinear = &v_bilinear_gravity;
  /// Evaluate spin configurations of a phase table concurrently.
  bool parallel = true;
};

// Integrands of the ordered (a, b) term of the action, in joules (action per
// unit coordinate time). a is the source evaluated at the retarded time, b the
// target at t.

double integrand_exact(const BranchScenario& scenario, const SpinConfiguration& sigma, std::size_t a,
                       std::size_t b, double t, const ActionSettings& settings = {});
double integrand_slow_motion(const BranchScenario& scenario, const SpinConfiguration& sigma, std::size_t a,
                             std::size_t b, double t, const ActionSettings& settings = {});
double integrand_instantaneous(const BranchScenario& scenario, const SpinConfiguration& sigma,
                               std::size_t a, std::size_t b, double t);

double integrand(ActionModel model, const BranchScenario& scenario, const SpinConfiguration& sigma,
                 std::size_t a, std::size_t b, double t, const ActionSettings& settings = {});

/// Times in [t0, t1] where the (a, b) integrand may have a kink: breakpoints
/// of b, and arrival times on b of light emitted at a's breakpoints (or a's
/// breakpoints themselves for the instantaneous model). Includes t0 and t1.
std::vector<double> kink_times(const BranchScenario& scenario, const SpinConfiguration& sigma,
                               std::size_t a, std::size_t b, ActionModel model, double t0, double t1,
                               const ActionSettings& settings = {});

/// Integral of one ordered term over [t0, t1] (J s), to absolute tolerance abs_tol (J s).
QuadratureResult ordered_pair_action(const BranchScenario& scenario, const SpinConfiguration& sigma,
                                     std::size_t a, std::size_t b, ActionModel model, double t0, double t1,
                                     double abs_tol, const ActionSettings& settings = {});

struct PhaseValue {
  double phase = 0.0;      // radians
  double quad_error = 0.0;  // radians
};

/// S_F / hbar over the scenario window: the sum over ordered pairs a != b.
/// Throws NumericalFailure if settings.tol cannot be met.
PhaseValue phase(const BranchScenario& scenario, const SpinConfiguration& sigma, ActionModel model,
                 const ActionSettings& settings = {});

struct PhaseTable {
  std::size_t particles = 0;
  /// Indexed by SpinConfiguration::index().
  std::vector<PhaseValue> entries;
  ActionModel model = ActionModel::exact;
  std::string scenario_digest;

  const PhaseValue& at(const SpinConfiguration& sigma) const { return entries.at(sigma.index()); }
  std::vector<double> phases() const;
};

PhaseTable phase_table(const BranchScenario& scenario, ActionModel model, const ActionSettings& settings = {});

/// Stable 64-bit FNV-1a digest of the scenario contents, as 16 hex digits.
std::string scenario_digest(const BranchScenario& scenario);

/// Reduces a phase (difference) to (-pi, pi] for display.
double wrap_phase(double phi);

/// Linearized metric perturbation h^{mu nu}(t, x) of the scenario's masses on
/// the branches sigma (retarded Lienard-Wiechert form). Static masses give
/// h^{00} = 2 G m / (c^2 r). Throws InvalidInput when x lies on a particle.
Tensor4 field_h(const BranchScenario& scenario, const SpinConfiguration& sigma, double t, const Vec3& x,
                const ActionSettings& settings = {});

}  // namespace medent

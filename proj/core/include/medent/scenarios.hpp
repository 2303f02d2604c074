#pragma once

#include "medent/action.hpp"
#include "medent/constants.hpp"
#include "medent/kinematics.hpp"

namespace medent {

/// How the two spin branches of each particle are displaced along the
/// separation axis. "up" always moves toward the partner.
enum class SplitGeometry {
  symmetric,  // up: +delta_x/2 toward, down: delta_x/2 away
  one_sided,  // up: delta_x toward, down: stays
};

const char* to_string(SplitGeometry g);

/// Two-particle interferometer: particles at rest a distance d apart, a
/// spin-dependent excursion of branch separation delta_x lasting T between
/// t1 = t_hold and t2 = t1 + T, then at rest again.
struct BMVParams {
  double A = 0.0;        // mass (kg) or charge (C), both particles
  double d = 0.0;        // initial separation, m
  double delta_x = 0.0;  // branch separation, m
  double T = 0.0;        // superposition duration t2 - t1, s
  double t_hold = 0.0;   // static padding before t1 and after the last light crossing, s
  Interaction interaction = Interaction::gravity;
  double ramp_fraction = 0.1;  // each cubic ramp lasts ramp_fraction * T
  SplitGeometry split = SplitGeometry::symmetric;

  /// d - delta_x.
  double closest_approach() const { return d - delta_x; }
};

/// Validates params. A zero delta_x is accepted (all branches coincide).
void validate(const BMVParams& params, const PhysicalConstants& constants);

/// Peak branch speed implied by the cubic ramps.
double peak_speed(const BMVParams& params);

/// Window is [0, t2 + (d + delta_x)/c + t_hold]; worldlines carry static
/// history back to -1.5 (d + delta_x)/c so every retarded time in the window
/// is defined. Throws InvalidInput for invalid or superluminal params.
BranchScenario build_bmv(const BMVParams& params, const PhysicalConstants& constants = {});

/// As build_bmv, additionally requiring c T below the closest distance
/// between the two moving worldline pieces, so that the moving parts are
/// spacelike separated.
BranchScenario build_spacelike(const BMVParams& params, const PhysicalConstants& constants = {});

/// phi_uu - phi_ud - phi_du + phi_dd. Throws InvalidInput unless N == 2.
double delta_phi(const PhaseTable& table);

/// (A/A_P)^2 (delta_x/d)^2 (c T / D).
double estimate_delta_phi(const BMVParams& params, const PhysicalConstants& constants = {});

/// (A/A_P)^2 (delta_x/d)^2: the change of delta_phi from T -> T - d/c.
double estimate_retardation_correction(const BMVParams& params, const PhysicalConstants& constants = {});

/// True when delta_x/d > 0.3, where the small-displacement estimators degrade.
bool outside_small_displacement_regime(const BMVParams& params);

/// Planck mass for gravity, Planck charge for electromagnetism.
double planck_scale(Interaction interaction, const PhysicalConstants& constants);

}  // namespace medent

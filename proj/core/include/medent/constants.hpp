#pragma once

namespace medent {

/// Physical constants in SI units. CODATA 2018 by default; every field can be
/// overridden (e.g. a very large c to probe the Newtonian limit).
class PhysicalConstants {
 public:
  /// CODATA 2018.
  PhysicalConstants();

  /// Overrides. k_e is derived from epsilon0. Throws InvalidInput unless all
  /// values are strictly positive and finite.
  PhysicalConstants(double c, double G, double hbar, double epsilon0);

  static PhysicalConstants codata2018() { return {}; }

  /// c = G = hbar = 1 and epsilon0 = 1/(4 pi), hence k_e = 1.
  static PhysicalConstants natural();

  double c() const { return c_; }
  double G() const { return G_; }
  double hbar() const { return hbar_; }
  double epsilon0() const { return epsilon0_; }
  double k_e() const { return k_e_; }

  PhysicalConstants with_c(double c) const { return {c, G_, hbar_, epsilon0_}; }
  PhysicalConstants with_G(double G) const { return {c_, G, hbar_, epsilon0_}; }
  PhysicalConstants with_hbar(double hbar) const { return {c_, G_, hbar, epsilon0_}; }
  PhysicalConstants with_epsilon0(double eps0) const { return {c_, G_, hbar_, eps0}; }

 private:
  double c_;
  double G_;
  double hbar_;
  double epsilon0_;
  double k_e_;
};

namespace codata {
inline constexpr double kSpeedOfLight = 299792458.0;
inline constexpr double kGravitational = 6.67430e-11;
inline constexpr double kHbar = 1.054571817e-34;
inline constexpr double kEpsilon0 = 8.8541878128e-12;
inline constexpr double kElementaryCharge = 1.602176634e-19;
inline constexpr double kElectronMass = 9.1093837015e-31;
inline constexpr double kFineStructure = 7.2973525693e-3;
}  // namespace codata

/// sqrt(hbar c / G).
double planck_mass(const PhysicalConstants& k);

/// sqrt(4 pi epsilon0 hbar c).
double planck_charge(const PhysicalConstants& k);

}  // namespace medent

#include "medent/constants.hpp"

#include <cmath>
#include <numbers>

#include "medent/error.hpp"

namespace medent {

namespace {
bool positive_finite(double v) { return std::isfinite(v) && v > 0.0; }
}  // namespace

PhysicalConstants::PhysicalConstants()
    : PhysicalConstants(codata::kSpeedOfLight, codata::kGravitational, codata::kHbar,
                        codata::kEpsilon0) {}

PhysicalConstants::PhysicalConstants(double c, double G, double hbar, double epsilon0)
    : c_(c), G_(G), hbar_(hbar), epsilon0_(epsilon0) {
  if (!positive_finite(c) || !positive_finite(G) || !positive_finite(hbar) ||
      !positive_finite(epsilon0)) {
    throw InvalidInput("physical constants must be strictly positive and finite");
  }
  k_e_ = 1.0 / (4.0 * std::numbers::pi * epsilon0_);
}

PhysicalConstants PhysicalConstants::natural() {
  return {1.0, 1.0, 1.0, 1.0 / (4.0 * std::numbers::pi)};
}

double planck_mass(const PhysicalConstants& k) { return std::sqrt(k.hbar() * k.c() / k.G()); }

double planck_charge(const PhysicalConstants& k) {
  return std::sqrt(4.0 * std::numbers::pi * k.epsilon0() * k.hbar() * k.c());
}

}  // namespace medent

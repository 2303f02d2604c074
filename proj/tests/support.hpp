#pragma once

// Shared fixtures and independent oracles for the test suites.

#include <array>
#include <cmath>
#include <complex>
#include <functional>
#include <random>
#include <vector>

#include "medent/action.hpp"
#include "medent/constants.hpp"
#include "medent/kinematics.hpp"
#include "medent/scenarios.hpp"

namespace medent::test {

inline PhysicalConstants unit_constants() { return PhysicalConstants::natural(); }

inline BranchScenario static_pair(const PhysicalConstants& k, double m1, double m2, double d, double T,
                                  Interaction kind = Interaction::gravity) {
  const double t0 = -3.0 * d / k.c();
  const auto w0 = Worldline::stationary({0, 0, 0}, t0, T);
  const auto w1 = Worldline::stationary({d, 0, 0}, t0, T);
  Particle p0{0, 0, w0, w0}, p1{0, 0, w1, w1};
  if (kind == Interaction::gravity) {
    p0.mass = m1;
    p1.mass = m2;
  } else {
    p0.charge = m1;
    p1.charge = m2;
  }
  return BranchScenario({p0, p1}, kind, {0.0, T}, k);
}

// eta_{mu nu} = diag(-1, 1, 1, 1)
inline constexpr std::array<double, 4> kEta{-1.0, 1.0, 1.0, 1.0};

// V-bar_a^{mu nu} V_b{mu nu}, built from components with no algebraic shortcuts.
inline double componentwise_gravity_bilinear(const Vec3& va, const Vec3& vb, double c) {
  const auto four = [c](const Vec3& v) { return std::array<double, 4>{c, v.x, v.y, v.z}; };
  const auto gamma = [c](const Vec3& v) { return 1.0 / std::sqrt(1.0 - norm2(v) / (c * c)); };
  const auto ua = four(va), ub = four(vb);
  double Va[4][4], Vb[4][4];
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) {
      Va[m][n] = gamma(va) * ua[m] * ua[n];
      Vb[m][n] = gamma(vb) * ub[m] * ub[n];
    }
  }
  double trace = 0.0;
  for (int m = 0; m < 4; ++m) trace += kEta[m] * Va[m][m];
  double sum = 0.0;
  for (int m = 0; m < 4; ++m) {
    for (int n = 0; n < 4; ++n) {
      const double eta_upper = m == n ? kEta[m] : 0.0;
      const double vbar = Va[m][n] - 0.5 * eta_upper * trace;
      sum += vbar * kEta[m] * kEta[n] * Vb[m][n];  // lower both indices of V_b
    }
  }
  return sum;
}

// Delay tau > 0 solving |r0 + tau v| = c tau, where r0 = target - x_source(t)
// and the source moves uniformly with velocity v.
inline double uniform_motion_delay(const Vec3& r0, const Vec3& v, double c) {
  const double a = c * c - dot(v, v);
  const double b = dot(r0, v);
  return (b + std::sqrt(b * b + a * norm2(r0))) / a;
}

inline double smoothstep(double u) { return u * u * (3.0 - 2.0 * u); }

// Composite Simpson on [lo, hi] with n (even) intervals.
inline double simpson(const std::function<double(double)>& f, double lo, double hi, int n) {
  const double h = (hi - lo) / n;
  double s = f(lo) + f(hi);
  for (int i = 1; i < n; ++i) s += (i % 2 ? 4.0 : 2.0) * f(lo + i * h);
  return s * h / 3.0;
}

// Newtonian delta-phi for the symmetric two-particle split, integrated over
// the smoothstep excursion profile: separations d - dx s, d, d, d + dx s.
inline double newtonian_delta_phi(const BMVParams& p, const PhysicalConstants& k) {
  const double d = p.d, dx = p.delta_x;
  const auto f = [&](double s) { return 1.0 / (d - dx * s) - 2.0 / d + 1.0 / (d + dx * s); };
  const double w = p.ramp_fraction * p.T;
  const double ramp = w * simpson([&](double u) { return f(smoothstep(u)); }, 0.0, 1.0, 4000);
  const double strength = p.interaction == Interaction::gravity ? k.G() * p.A * p.A : -k.k_e() * p.A * p.A;
  return strength / k.hbar() * ((p.T - 2.0 * w) * f(1.0) + 2.0 * ramp);
}

// Random C1 piecewise cubic worldline; knot speeds and mean speeds stay
// below c/4 so every Hermite piece is subluminal (|v| <= 7c/8).
inline Worldline random_worldline(std::mt19937_64& rng, double t0, double t1, int pieces, double c,
                                  const Vec3& start) {
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const auto random_vec = [&](double max_norm) {
    Vec3 v;
    do {
      v = {u(rng), u(rng), u(rng)};
    } while (norm2(v) > 1.0);
    return max_norm * v;
  };
  std::vector<Segment> segs;
  const double dt = (t1 - t0) / pieces;
  Vec3 x = start;
  Vec3 v = random_vec(0.25 * c);
  for (int i = 0; i < pieces; ++i) {
    const double a = t0 + i * dt;
    const double b = i + 1 == pieces ? t1 : t0 + (i + 1) * dt;
    const Vec3 x1 = x + random_vec(0.25 * c * (b - a));
    const Vec3 v1 = random_vec(0.25 * c);
    segs.push_back(Segment::hermite(a, b, x, v, x1, v1));
    x = x1;
    v = v1;
  }
  return Worldline(std::move(segs), c);
}

inline double rel_diff(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace medent::test

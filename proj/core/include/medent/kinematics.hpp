#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "medent/constants.hpp"
#include "medent/vec3.hpp"

namespace medent {

/// Cubic polynomial x(t) = c0 + c1 (t - t_start) + c2 (t - t_start)^2 + c3 (t - t_start)^3
/// on [t_start, t_end].
struct Segment {
  double t_start = 0.0;
  double t_end = 0.0;
  std::array<Vec3, 4> coeffs{};

  Vec3 position(double t) const;
  Vec3 velocity(double t) const;
  Vec3 acceleration(double t) const;

  static Segment constant(double t0, double t1, const Vec3& x);
  static Segment linear(double t0, double t1, const Vec3& x0, const Vec3& v);
  /// Cubic Hermite interpolant through (x0, v0) at t0 and (x1, v1) at t1.
  static Segment hermite(double t0, double t1, const Vec3& x0, const Vec3& v0, const Vec3& x1,
                         const Vec3& v1);
};

/// Timelike trajectory of one particle branch: a continuous, piecewise-cubic
/// position x(t) with strictly subluminal velocity.
class Worldline {
 public:
  /// Validates ordering, contiguity, positional continuity and |v| < c on a
  /// dense sample. Throws InvalidInput on violation.
  Worldline(std::vector<Segment> segments, double c);

  static Worldline stationary(const Vec3& x, double t0, double t1);

  double t_start() const { return segments_.front().t_start; }
  double t_end() const { return segments_.back().t_end; }
  bool contains(double t) const { return t >= t_start() && t <= t_end(); }

  /// Throws InvalidInput outside [t_start, t_end].
  Vec3 position(double t) const;
  /// Right-limit derivative at interior breakpoints; left limit at t_end.
  Vec3 velocity(double t) const;

  std::span<const Segment> segments() const { return segments_; }
  /// All segment boundaries including both ends.
  std::vector<double> breakpoints() const;
  /// Largest sampled speed.
  double max_speed() const;

  /// Prepends a uniform-motion segment matching position and velocity at
  /// t_start, so that the worldline starts at new_start. No-op if
  /// new_start >= t_start.
  Worldline extended_back(double new_start) const;
  /// Appends a uniform-motion segment so that the worldline ends at new_end.
  Worldline extended_forward(double new_end) const;

  std::size_t segment_index(double t) const;

 private:
  Worldline() = default;

  std::vector<Segment> segments_;
  double c_ = 0.0;
};

/// v^mu = (c, v) together with the Lorentz factor of v.
struct Kinematics4 {
  std::array<double, 4> v4{};
  double gamma = 1.0;

  static Kinematics4 from_velocity(const Vec3& v, double c);
  Vec3 three_velocity() const { return {v4[1], v4[2], v4[3]}; }
};

/// Minkowski inner product, signature (-,+,+,+).
double minkowski_dot(const std::array<double, 4>& a, const std::array<double, 4>& b);

/// eta_{mu nu} v_a^mu v_b^nu = -c^2 + v_a . v_b.
double v_bilinear_em(const Kinematics4& ka, const Kinematics4& kb);

/// Full contraction Vbar_a^{mu nu} V_{b mu nu} with V^{mu nu} = gamma v^mu v^nu and
/// Vbar = V - eta tr(V) / 2, built componentwise as 4x4 tensors. Equals c^4/2 when
/// both particles are at rest.
double v_bilinear_gravity(const Kinematics4& ka, const Kinematics4& kb);

using Tensor4 = std::array<std::array<double, 4>, 4>;

/// V^{mu nu} = gamma v^mu v^nu.
Tensor4 velocity_tensor(const Kinematics4& k);
/// Vbar^{mu nu} = V^{mu nu} - eta^{mu nu} (eta_{ab} V^{ab}) / 2.
Tensor4 trace_reversed(const Tensor4& upper);

enum class Spin : std::uint8_t { up = 0, down = 1 };

/// One spin value per particle. Index encoding: particle 0 is the most
/// significant bit and up = 0, so for two particles the order is uu, ud, du, dd.
class SpinConfiguration {
 public:
  explicit SpinConfiguration(std::vector<Spin> spins);

  static SpinConfiguration from_index(std::size_t index, std::size_t n);
  /// Parses "ud", "uud", ... Throws InvalidInput.
  static SpinConfiguration from_label(const std::string& label);
  static std::vector<SpinConfiguration> all(std::size_t n);

  std::size_t size() const { return spins_.size(); }
  Spin operator[](std::size_t a) const { return spins_[a]; }
  std::size_t index() const;
  std::string label() const;

  friend bool operator==(const SpinConfiguration&, const SpinConfiguration&) = default;

 private:
  std::vector<Spin> spins_;
};

enum class Interaction { gravity, electromagnetism };

const char* to_string(Interaction kind);

struct Particle {
  double mass = 0.0;    // kg
  double charge = 0.0;  // C
  Worldline up;
  Worldline down;

  const Worldline& branch(Spin s) const { return s == Spin::up ? up : down; }
};

struct TimeWindow {
  double t_i = 0.0;
  double t_f = 0.0;
};

/// N particles with one worldline per spin value, an interaction kind and the
/// integration window.
class BranchScenario {
 public:
  /// Throws InvalidInput when N == 0, t_f < t_i, a worldline does not cover
  /// the window, or source strengths are inconsistent with the interaction.
  BranchScenario(std::vector<Particle> particles, Interaction interaction, TimeWindow window,
                 PhysicalConstants constants);

  std::size_t size() const { return particles_.size(); }
  const Particle& particle(std::size_t a) const { return particles_.at(a); }
  std::span<const Particle> particles() const { return particles_; }
  Interaction interaction() const { return interaction_; }
  const TimeWindow& window() const { return window_; }
  const PhysicalConstants& constants() const { return constants_; }

  const Worldline& worldline(std::size_t a, const SpinConfiguration& sigma) const {
    return particles_.at(a).branch(sigma[a]);
  }
  /// Source strength: mass for gravity, charge for electromagnetism.
  double strength(std::size_t a) const;

  /// Largest pairwise separation over all branches at t_i; used to scale
  /// absolute length tolerances.
  double length_scale() const;

  BranchScenario with_window(TimeWindow w) const;
  BranchScenario with_constants(const PhysicalConstants& k) const;

 private:
  std::vector<Particle> particles_;
  Interaction interaction_;
  TimeWindow window_;
  PhysicalConstants constants_;
};

}  // namespace medent

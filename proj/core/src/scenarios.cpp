#include "medent/scenarios.hpp"

#include <cmath>
#include <sstream>

#include "medent/error.hpp"

namespace medent {

namespace {

struct Excursion {
  Vec3 start;
  Vec3 displacement;  // full excursion at the plateau
};

// rest -> smoothstep out -> plateau -> smoothstep back -> rest
Worldline excursion_worldline(const Excursion& e, double t_begin, double t1, double t2, double w, double t_end,
                              double c) {
  if (norm(e.displacement) == 0.0) return Worldline::stationary(e.start, t_begin, t_end);
  const Vec3 peak = e.start + e.displacement;
  std::vector<Segment> segs;
  segs.push_back(Segment::constant(t_begin, t1, e.start));
  // x(h) = start + D (3 h^2 / w^2 - 2 h^3 / w^3)
  segs.push_back({t1, t1 + w, {e.start, {}, (3.0 / (w * w)) * e.displacement, (-2.0 / (w * w * w)) * e.displacement}});
  if (t2 - w > t1 + w) segs.push_back(Segment::constant(t1 + w, t2 - w, peak));
  segs.push_back({t2 - w, t2, {peak, {}, (-3.0 / (w * w)) * e.displacement, (2.0 / (w * w * w)) * e.displacement}});
  segs.push_back(Segment::constant(t2, t_end, e.start));
  return Worldline(std::move(segs), c);
}

double branch_amplitude(const BMVParams& p, Spin s) {
  if (p.split == SplitGeometry::symmetric) return s == Spin::up ? 0.5 * p.delta_x : -0.5 * p.delta_x;
  return s == Spin::up ? p.delta_x : 0.0;
}

double max_inward(const BMVParams& p) {
  return p.split == SplitGeometry::symmetric ? 0.5 * p.delta_x : p.delta_x;
}

}  // namespace

const char* to_string(SplitGeometry g) { return g == SplitGeometry::symmetric ? "symmetric" : "one_sided"; }

void validate(const BMVParams& p, const PhysicalConstants& constants) {
  const auto fail = [](const std::string& what) { throw InvalidInput("bmv params: " + what); };
  if (!std::isfinite(p.A) || p.A == 0.0) fail("A must be nonzero");
  if (p.interaction == Interaction::gravity && !(p.A > 0.0)) fail("mass must be positive");
  if (!(p.d > 0.0)) fail("d must be positive");
  if (!(p.delta_x >= 0.0)) fail("delta_x must be non-negative");
  if (!(p.T > 0.0)) fail("T must be positive");
  if (!(p.t_hold >= 0.0)) fail("t_hold must be non-negative");
  if (!(p.ramp_fraction > 0.0 && p.ramp_fraction <= 0.5)) fail("ramp_fraction must lie in (0, 0.5]");
  if (!(2.0 * max_inward(p) < p.d)) fail("branches must not cross: closest approach must stay positive");
  if (!(peak_speed(p) < constants.c())) {
    std::ostringstream msg;
    msg << "ramps imply peak speed " << peak_speed(p) / constants.c()
        << " c; lengthen T, raise ramp_fraction or shrink delta_x";
    fail(msg.str());
  }
}

double peak_speed(const BMVParams& p) {
  const double w = p.ramp_fraction * p.T;
  const double amp = p.split == SplitGeometry::symmetric ? 0.5 * p.delta_x : p.delta_x;
  return 1.5 * amp / w;
}

BranchScenario build_bmv(const BMVParams& p, const PhysicalConstants& k) {
  validate(p, k);
  const double c = k.c();
  const double crossing = (p.d + p.delta_x) / c;
  const double t_i = 0.0;
  const double t1 = p.t_hold;
  const double t2 = t1 + p.T;
  const double t_f = t2 + crossing + p.t_hold;
  const double w = p.ramp_fraction * p.T;
  const double history = t_i - 1.5 * crossing;

  const Vec3 axis{1.0, 0.0, 0.0};
  const Vec3 origin[2] = {{0.0, 0.0, 0.0}, {p.d, 0.0, 0.0}};
  const double toward[2] = {1.0, -1.0};

  std::vector<Particle> particles;
  for (int a = 0; a < 2; ++a) {
    const auto make = [&](Spin s) {
      const Excursion e{origin[a], (toward[a] * branch_amplitude(p, s)) * axis};
      return excursion_worldline(e, history, t1, t2, w, t_f, c);
    };
    Particle particle{0.0, 0.0, make(Spin::up), make(Spin::down)};
    if (p.interaction == Interaction::gravity) {
      particle.mass = p.A;
    } else {
      particle.charge = p.A;
    }
    particles.push_back(std::move(particle));
  }
  return BranchScenario(std::move(particles), p.interaction, {t_i, t_f}, k);
}

BranchScenario build_spacelike(const BMVParams& p, const PhysicalConstants& k) {
  const double closest = p.d - 2.0 * max_inward(p);
  if (!(k.c() * p.T < closest)) {
    std::ostringstream msg;
    msg << "spacelike scenario requires c T < " << closest << " m (closest distance of the moving parts), got "
        << k.c() * p.T << " m";
    throw InvalidInput(msg.str());
  }
  return build_bmv(p, k);
}

double delta_phi(const PhaseTable& table) {
  if (table.particles != 2 || table.entries.size() != 4) throw InvalidInput("delta_phi needs two particles");
  const auto& e = table.entries;
  return e[0].phase - e[1].phase - e[2].phase + e[3].phase;
}

double planck_scale(Interaction interaction, const PhysicalConstants& k) {
  return interaction == Interaction::gravity ? planck_mass(k) : planck_charge(k);
}

double estimate_delta_phi(const BMVParams& p, const PhysicalConstants& k) {
  const double ratio = p.A / planck_scale(p.interaction, k);
  const double split = p.delta_x / p.d;
  return ratio * ratio * split * split * (k.c() * p.T / p.closest_approach());
}

double estimate_retardation_correction(const BMVParams& p, const PhysicalConstants& k) {
  const double ratio = p.A / planck_scale(p.interaction, k);
  const double split = p.delta_x / p.d;
  return ratio * ratio * split * split;
}

bool outside_small_displacement_regime(const BMVParams& p) { return p.delta_x > 0.3 * p.d; }

}  // namespace medent

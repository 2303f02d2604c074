#include <doctest.h>

#include "medent/action.hpp"
#include "medent/entanglement.hpp"
#include "medent/error.hpp"
#include "medent/scenarios.hpp"
#include "support.hpp"

using namespace medent;
using namespace medent::test;

namespace {

BMVParams base_params() {
  BMVParams p;
  p.A = 1.0;
  p.d = 1.0;
  p.delta_x = 0.2;
  p.T = 3.0;
  p.t_hold = 0.5;
  p.ramp_fraction = 0.2;
  return p;
}

}  // namespace

TEST_CASE("builder geometry") {
  const auto k = unit_constants();
  const auto p = base_params();
  const auto s = build_bmv(p, k);
  REQUIRE(s.size() == 2);
  const double t1 = p.t_hold, t2 = t1 + p.T;
  const double mid = 0.5 * (t1 + t2);
  // symmetric split: up moves toward the partner by dx/2, down away
  CHECK(s.particle(0).up.position(mid).x == doctest::Approx(0.5 * p.delta_x));
  CHECK(s.particle(0).down.position(mid).x == doctest::Approx(-0.5 * p.delta_x));
  CHECK(s.particle(1).up.position(mid).x == doctest::Approx(p.d - 0.5 * p.delta_x));
  CHECK(s.particle(1).down.position(mid).x == doctest::Approx(p.d + 0.5 * p.delta_x));
  for (const auto& part : s.particles()) {
    for (const Worldline* w : {&part.up, &part.down}) {
      CHECK(norm(w->position(t1) - w->position(t2)) <= 1e-15);
      CHECK(norm(w->velocity(t1)) == 0.0);
      CHECK(w->max_speed() == doctest::Approx(peak_speed(p)).epsilon(1e-6));
      // static history before the window
      CHECK(w->t_start() <= s.window().t_i - (p.d + p.delta_x) / k.c());
    }
  }
  CHECK(s.window().t_f >= t2 + p.d / k.c());

  auto one = p;
  one.split = SplitGeometry::one_sided;
  const auto so = build_bmv(one, k);
  CHECK(so.particle(0).up.position(mid).x == doctest::Approx(p.delta_x));
  CHECK(so.particle(0).down.position(mid).x == 0.0);
}

TEST_CASE("invalid parameters") {
  const auto k = unit_constants();
  auto p = base_params();
  p.delta_x = 2.5;  // branches would cross
  CHECK_THROWS_AS(build_bmv(p, k), InvalidInput);
  p = base_params();
  p.T = 0.0;
  CHECK_THROWS_AS(build_bmv(p, k), InvalidInput);
  p = base_params();
  p.T = 0.1;
  p.ramp_fraction = 0.1;  // peak speed 1.5 * 0.1 / 0.01 = 15 c
  CHECK_THROWS_AS(build_bmv(p, k), InvalidInput);
  p = base_params();
  p.A = -1.0;
  CHECK_THROWS_AS(build_bmv(p, k), InvalidInput);
  p.interaction = Interaction::electromagnetism;
  CHECK_NOTHROW(build_bmv(p, k));
}

TEST_CASE("no branch separation gives equal phases") {
  const auto k = unit_constants();
  auto p = base_params();
  p.delta_x = 0.0;
  const auto t = phase_table(build_bmv(p, k), ActionModel::exact);
  for (const auto& e : t.entries) CHECK(e.phase == doctest::Approx(t.entries[0].phase).epsilon(1e-14));
}

TEST_CASE("long superpositions: instantaneous and slow-motion agree to d / (c T)") {
  const auto k = unit_constants();
  auto p = base_params();
  p.T = 400.0;
  p.ramp_fraction = 0.1;
  const auto s = build_bmv(p, k);
  ActionSettings set;
  set.tol = 1e-9;
  const double bound = p.d / (k.c() * p.T);
  for (const auto& sigma : SpinConfiguration::all(2)) {
    const double in = phase(s, sigma, ActionModel::instantaneous, set).phase;
    const double sm = phase(s, sigma, ActionModel::slow_motion, set).phase;
    CHECK(std::abs(in - sm) <= bound * std::abs(sm));
  }
}

TEST_CASE("spacelike superposition: slow-motion phases are additive") {
  const auto k = unit_constants();
  auto p = base_params();
  p.delta_x = 0.05;
  p.T = 0.8;
  p.ramp_fraction = 0.25;
  const auto s = build_spacelike(p, k);
  ActionSettings set;
  set.tol = 1e-10;
  const auto slow = phase_table(s, ActionModel::slow_motion, set);
  const auto check = phase_additivity_check(slow, 10 * set.tol);
  CHECK(check.is_additive);
  CHECK(negativity(evolve(SpinState::uniform(2), slow)) <= 1e-9);
  // bmv builder without the spacelike guard gives the same scenario
  CHECK(scenario_digest(s) == scenario_digest(build_bmv(p, k)));
  // instantaneous model entangles the same configuration
  const auto inst = phase_table(s, ActionModel::instantaneous, set);
  CHECK(delta_phi(inst) > 1e-3);

  p.T = 0.95;  // closest approach of the moving parts is d - dx
  CHECK_THROWS_AS(build_spacelike(p, k), InvalidInput);
}

TEST_CASE("spacelike phases split over the four characteristic intervals") {
  const auto k = unit_constants();
  auto p = base_params();
  p.delta_x = 0.05;
  p.T = 0.8;
  p.ramp_fraction = 0.25;
  const auto s = build_spacelike(p, k);
  const double t1 = p.t_hold, t2 = t1 + p.T, t3 = t2 + p.d / k.c();
  const double cuts[] = {s.window().t_i, t1, t2, t3, s.window().t_f};
  ActionSettings set;
  set.tol = 1e-10;
  for (const auto& sigma : SpinConfiguration::all(2)) {
    const double whole = phase(s, sigma, ActionModel::slow_motion, set).phase;
    double parts = 0.0;
    for (int i = 0; i < 4; ++i) parts += phase(s.with_window({cuts[i], cuts[i + 1]}), sigma, ActionModel::slow_motion, set).phase;
    CHECK(std::abs(whole - parts) <= 4 * set.tol);
  }
}

TEST_CASE("estimators") {
  const PhysicalConstants k;
  SUBCASE("unit plug-in") {
    BMVParams p;
    p.A = planck_mass(k);
    p.d = 2.0;
    p.delta_x = 1.0;
    p.T = 1.0 / k.c();  // c T = D
    CHECK(estimate_delta_phi(p, k) == doctest::Approx(0.25));
  }
  SUBCASE("electron") {
    BMVParams p;
    p.interaction = Interaction::electromagnetism;
    p.A = -codata::kElementaryCharge;
    p.d = 1e-2;
    p.delta_x = 3e-3;
    p.T = (p.d - p.delta_x) / k.c();
    CHECK(p.A / planck_charge(k) == doctest::Approx(-0.0854).epsilon(1e-3));
    CHECK(estimate_delta_phi(p, k) == doctest::Approx(6.6e-4).epsilon(0.01));
    CHECK(estimate_retardation_correction(p, k) == doctest::Approx(6.6e-4).epsilon(0.01));
    CHECK_FALSE(outside_small_displacement_regime(p));
    auto q = p;
    q.A *= 2.0;
    CHECK(estimate_delta_phi(q, k) == doctest::Approx(4.0 * estimate_delta_phi(p, k)));
    q = p;
    q.delta_x = 0.0;
    CHECK(estimate_retardation_correction(q, k) == 0.0);
    q = p;
    q.A = 0.0;
    CHECK(estimate_retardation_correction(q, k) == 0.0);
    q = p;
    q.delta_x = 4e-3;
    CHECK(outside_small_displacement_regime(q));
  }
}

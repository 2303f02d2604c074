#include <doctest.h>

#include <random>

#include "medent/error.hpp"
#include "medent/lorentz.hpp"
#include "support.hpp"

using namespace medent;
using namespace medent::test;

TEST_CASE("boost of events and velocities") {
  const double c = 2.0;
  const LorentzBoost b({0.6, 0, 0}, c);
  CHECK(b.gamma() == doctest::Approx(1.25));
  const auto e = b.apply(1.0, {1.0, 2.0, 3.0});
  // t' = g (t - beta x / c), x' = g (x - beta c t)
  CHECK(e.t == doctest::Approx(1.25 * (1.0 - 0.6 * 1.0 / c)));
  CHECK(e.x.x == doctest::Approx(1.25 * (1.0 - 0.6 * c)));
  CHECK(e.x.y == 2.0);
  CHECK(e.x.z == 3.0);
  // interval preserved
  const double s2 = -c * c + 1 + 4 + 9;
  CHECK(-c * c * e.t * e.t + norm2(e.x) == doctest::Approx(s2));
  // velocity addition along the boost
  CHECK(b.apply_velocity({0.6 * c, 0, 0}).x == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(b.apply_velocity({0, 0, 0}).x == doctest::Approx(-0.6 * c));
  CHECK_THROWS_AS(LorentzBoost({1.0, 0, 0}, c), InvalidInput);
}

TEST_CASE("boosted worldline refit error") {
  const double c = 1.0;
  std::mt19937_64 rng(17);
  const auto w = random_worldline(rng, -3.0, 3.0, 5, c, {0, 0, 0});
  const LorentzBoost b({0.1, 0.2, -0.1}, c);
  const auto bw = boost_worldline(w, b, c, 1.0, 1e-10);
  CHECK(bw.max_position_error <= 1e-10);
  CHECK(bw.max_velocity_error <= 1e-10);
  // events of the lab worldline land on the boosted one
  for (double t : {-2.5, -0.3, 0.0, 1.7, 2.9}) {
    const auto e = b.apply(t, w.position(t));
    if (!bw.worldline.contains(e.t)) continue;
    CHECK(norm(bw.worldline.position(e.t) - e.x) <= 1e-9);
    CHECK(norm(bw.worldline.velocity(e.t) - b.apply_velocity(w.velocity(t))) <= 1e-8);
  }
}

TEST_CASE("exact phase is boost invariant") {
  const auto k = unit_constants();
  BMVParams p;
  p.A = 1.0;
  p.d = 1.0;
  p.delta_x = 0.3;
  p.ramp_fraction = 0.25;
  p.T = 2.0;
  p.t_hold = 1.0;
  const auto s = build_bmv(p, k);
  ActionSettings set;
  set.tol = 1e-10;
  std::mt19937_64 rng(23);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int trial = 0; trial < 4; ++trial) {
    Vec3 dir{u(rng), u(rng), u(rng)};
    const Vec3 beta = (0.3 * std::abs(u(rng)) / norm(dir)) * dir;
    const LorentzBoost boost(beta, k.c());
    for (const char* label : {"uu", "ud"}) {
      const auto sigma = SpinConfiguration::from_label(label);
      const auto lab = phase(s, sigma, ActionModel::exact, set);
      const auto moved = boosted_phase(s, sigma, boost, ActionModel::exact, set);
      const double bound = 10.0 * (lab.quad_error + moved.quad_error + moved.refit_error * std::abs(lab.phase)) + 1e-12;
      CHECK(std::abs(moved.phase - lab.phase) <= bound);
    }
  }
}

TEST_CASE("slow-motion phase is frame dependent") {
  const auto k = unit_constants();
  BMVParams p;
  p.A = 1.0;
  p.d = 1.0;
  p.delta_x = 0.3;
  p.ramp_fraction = 0.25;
  p.T = 2.0;
  p.t_hold = 1.0;
  const auto s = build_bmv(p, k);
  const auto sigma = SpinConfiguration::from_label("ud");
  const LorentzBoost boost({0.2, 0, 0}, k.c());
  const double lab = phase(s, sigma, ActionModel::slow_motion).phase;
  const double moved = boosted_phase(s, sigma, boost, ActionModel::slow_motion).phase;
  CHECK(std::abs(moved - lab) > 1e-3);
}

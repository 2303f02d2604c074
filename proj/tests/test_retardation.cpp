#include <doctest.h>

#include <random>

#include "medent/error.hpp"
#include "medent/retardation.hpp"
#include "support.hpp"

using namespace medent;
using namespace medent::test;

TEST_CASE("static source") {
  const double c = 2.0, d = 3.0, t = 10.0;
  const auto w = Worldline::stationary({0, 0, 0}, 0.0, 20.0);
  const auto r = retarded_time(w, {d, 0, 0}, t, c, 1e-12);
  CHECK(r.t_ret == doctest::Approx(t - d / c).epsilon(1e-15));
  CHECK(r.d == doctest::Approx(d));
  CHECK(r.denom == doctest::Approx(d));
  CHECK(r.residual <= 1e-12);
  CHECK(r.t_ret < t);
}

TEST_CASE("uniform motion matches the light-cone quadratic") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  const double c = 1.0;
  for (int i = 0; i < 500; ++i) {
    const Vec3 x0{u(rng), u(rng), u(rng)};  // position at t = 0
    const Vec3 v = 0.95 * std::abs(u(rng)) * Vec3{u(rng), u(rng), u(rng)} * (1.0 / std::sqrt(3.0));
    const Worldline w({Segment::linear(-100.0, 10.0, x0 - 100.0 * v, v)}, c);
    const Vec3 target{2.0 + u(rng), 2.0 * u(rng), u(rng)};
    const double t = 3.0 * u(rng);
    const auto r = retarded_time(w, target, t, c, 1e-13);
    const double delay = uniform_motion_delay(target - (x0 + t * v), v, c);
    CHECK(t - r.t_ret == doctest::Approx(delay).epsilon(1e-12));
    CHECK(r.residual <= 1e-13);
    CHECK(r.denom > 0.0);
    CHECK(r.denom == doctest::Approx(r.d - dot(r.d_vec, v) / c).epsilon(1e-14));
  }
}

TEST_CASE("source at rest over the relevant past behaves as static") {
  const double c = 1.0, d = 2.0, t = 10.0;
  // moves before t - 2d/c, then rests at the origin
  const Worldline w({Segment::hermite(0.0, 5.0, {-1, 0, 0}, {0, 0, 0}, {0, 0, 0}, {0, 0, 0}),
                     Segment::constant(5.0, 12.0, {0, 0, 0})},
                    c);
  const auto r = retarded_time(w, {d, 0, 0}, t, c, 1e-13);
  CHECK(r.t_ret == doctest::Approx(t - d / c).epsilon(1e-14));
  CHECK(r.denom == doctest::Approx(d));
}

TEST_CASE("pair retardation on static pairs") {
  const auto k = PhysicalConstants::natural();
  const auto s = static_pair(k, 1.0, 1.0, 1.5, 4.0);
  const auto sigma = SpinConfiguration::from_label("ud");
  const auto ab = pair_retardation(s, sigma, 0, 1, 2.0);
  const auto ba = pair_retardation(s, sigma, 1, 0, 2.0);
  CHECK(ab.d == doctest::Approx(1.5));
  CHECK(ab.denom == doctest::Approx(1.5));
  CHECK(ba.d == doctest::Approx(ab.d));
  CHECK(ba.denom == doctest::Approx(ab.denom));
  CHECK(ab.d_vec.x == doctest::Approx(1.5));
  CHECK(ba.d_vec.x == doctest::Approx(-1.5));
  CHECK_THROWS_AS(pair_retardation(s, sigma, 1, 1, 2.0), InvalidInput);
}

TEST_CASE("a branch displaced before the light-crossing shows its displaced position") {
  const auto k = PhysicalConstants::natural();
  const double d = 2.0, dx = 0.5;
  const auto rest = Worldline::stationary({0, 0, 0}, -10, 10);
  // down branch of particle 0 reaches x = dx by t = 1, then rests
  const Worldline moved({Segment::constant(-10, 0, {0, 0, 0}), Segment::hermite(0, 1, {0, 0, 0}, {}, {dx, 0, 0}, {}),
                         Segment::constant(1, 10, {dx, 0, 0})},
                        k.c());
  const auto target = Worldline::stationary({d, 0, 0}, -10, 10);
  const BranchScenario s({{1, 0, rest, moved}, {1, 0, target, target}}, Interaction::gravity, {0, 8}, k);
  const double t = 6.0;  // t - (d - dx)/c = 4.5 > 1
  const auto r = pair_retardation(s, SpinConfiguration::from_label("du"), 0, 1, t);
  CHECK(r.d == doctest::Approx(d - dx));
  CHECK(r.t_ret == doctest::Approx(t - (d - dx) / k.c()));
  const auto up = pair_retardation(s, SpinConfiguration::from_label("uu"), 0, 1, t);
  CHECK(up.d == doctest::Approx(d));
}

TEST_CASE("retarded time is nondecreasing along a moving BMV branch") {
  const auto k = PhysicalConstants::natural();
  BMVParams p;
  p.A = 1.0;
  p.d = 1.0;
  p.delta_x = 0.4;
  p.T = 2.0;
  p.t_hold = 0.5;
  p.ramp_fraction = 0.3;
  const auto s = build_bmv(p, k);
  const auto sigma = SpinConfiguration::from_label("uu");
  double prev = -1e300;
  for (int i = 0; i <= 2000; ++i) {
    const double t = s.window().t_i + (s.window().t_f - s.window().t_i) * i / 2000.0;
    const auto r = pair_retardation(s, sigma, 0, 1, t);
    CHECK(r.t_ret >= prev);
    CHECK(r.t_ret < t);
    prev = r.t_ret;
  }
}

TEST_CASE("misconfigured requests are reported") {
  const auto w = Worldline::stationary({0, 0, 0}, 0.0, 10.0);
  // root would precede the source's history
  CHECK_THROWS_AS(retarded_time(w, {5, 0, 0}, 1.0, 1.0, 1e-12), InvalidInput);
  // target on top of the source
  CHECK_THROWS_AS(retarded_time(w, {0, 0, 0}, 5.0, 1.0, 1e-12), InvalidInput);
  CHECK_THROWS_AS(retarded_time(w, {1, 0, 0}, 5.0, 1.0, 0.0), InvalidInput);
}

TEST_CASE("light-cone arrival on a static target") {
  const auto target = Worldline::stationary({3, 4, 0}, 0.0, 20.0);
  const auto t = lightcone_arrival({0, 0, 0}, 1.0, target, 2.0, 1e-13);
  REQUIRE(t.has_value());
  CHECK(*t == doctest::Approx(1.0 + 5.0 / 2.0));
  CHECK_FALSE(lightcone_arrival({0, 0, 0}, 19.0, target, 2.0, 1e-13).has_value());
}

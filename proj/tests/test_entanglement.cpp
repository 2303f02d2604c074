#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>
#include <numbers>
#include <random>

#include "medent/entanglement.hpp"
#include "medent/error.hpp"
#include "medent/linalg.hpp"

using namespace medent;
using cd = std::complex<double>;

namespace {

PhaseTable table_of(std::vector<double> phases) {
  PhaseTable t;
  t.particles = static_cast<std::size_t>(std::log2(phases.size()));
  for (double p : phases) t.entries.push_back({p, 0.0});
  return t;
}

// partial transpose over particle 0 of a two-qubit pure state, eigenvalues by Eigen
Eigen::VectorXd eigen_pt_spectrum(const SpinState& s) {
  Eigen::Matrix4cd rho;
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) rho(i, j) = s[i] * std::conj(s[j]);
  Eigen::Matrix4cd pt;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const int a = i >> 1, b = i & 1, c = j >> 1, d = j & 1;
      pt((c << 1) | b, (a << 1) | d) = rho(i, j);
    }
  }
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix4cd> es(pt);
  return es.eigenvalues();
}

double eigen_negativity(const SpinState& s) {
  const auto ev = eigen_pt_spectrum(s);
  double n = 0.0;
  for (int i = 0; i < ev.size(); ++i) n += ev[i] < 0.0 ? -ev[i] : 0.0;
  return n;
}

}  // namespace

TEST_CASE("state construction") {
  CHECK_THROWS_AS(SpinState({1.0, 1.0, 0.0, 0.0}), InvalidInput);
  CHECK_THROWS_AS(SpinState({1.0, 0.0, 0.0}), InvalidInput);
  CHECK_THROWS_AS(SpinState::normalized({0.0, 0.0}), InvalidInput);
  const auto s = SpinState::normalized({1.0, 1.0, 0.0, 0.0});
  CHECK(s.norm_squared() == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(SpinState::uniform(3).dimension() == 8);
  CHECK(std::abs(SpinState::uniform(2)[3] - cd(0.5)) < 1e-16);
}

TEST_CASE("evolve applies phases and preserves the norm") {
  const auto init = SpinState::normalized({1.0, cd(0.2, 0.3), -0.5, cd(0, 1)});
  SUBCASE("zero phases are the identity") {
    const auto out = evolve(init, table_of({0, 0, 0, 0}));
    for (int i = 0; i < 4; ++i) CHECK(std::abs(out[i] - init[i]) < 1e-16);
  }
  SUBCASE("equal phases give a global phase") {
    const auto out = evolve(init, table_of({0.7, 0.7, 0.7, 0.7}));
    for (int i = 0; i < 4; ++i) CHECK(std::abs(out[i] - std::polar(1.0, 0.7) * init[i]) < 1e-15);
  }
  SUBCASE("large phases keep unit norm") {
    const auto out = evolve(init, table_of({1e3, -2e4, 3.3e5, 17.0}));
    CHECK(std::abs(out.norm_squared() - 1.0) <= 1e-12);
  }
  CHECK_THROWS_AS(evolve(init, table_of({0, 0, 0, 0, 0, 0, 0, 0})), InvalidInput);
}

TEST_CASE("Bell and product states") {
  const double r = 1.0 / std::sqrt(2.0);
  const SpinState bell({r, 0.0, 0.0, r});
  auto spectrum = eigen_pt_spectrum(bell);
  std::sort(spectrum.data(), spectrum.data() + 4);
  CHECK(spectrum[0] == doctest::Approx(-0.5));
  for (int i = 1; i < 4; ++i) CHECK(spectrum[i] == doctest::Approx(0.5));
  CHECK(negativity(bell) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(concurrence(bell) == doctest::Approx(1.0).epsilon(1e-12));

  const auto product = SpinState::normalized({cd(0.6), cd(0, 0.8) * 0.6, cd(0.8), cd(0, 0.8) * 0.8});
  CHECK(negativity(product) <= 1e-14);
  CHECK(concurrence(product) <= 1e-14);
}

TEST_CASE("phase pattern (0, pi, 0, 0) on a uniform state is maximally entangled") {
  const auto out = evolve(SpinState::uniform(2), table_of({0, std::numbers::pi, 0, 0}));
  CHECK(negativity(out) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(eigen_negativity(out) == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("negativity over a phase grid matches the closed form and a brute-force eigensolve") {
  for (int i = 0; i <= 40; ++i) {
    const double x = -2.0 * std::numbers::pi + 4.0 * std::numbers::pi * i / 40.0;
    const auto out = evolve(SpinState::uniform(2), table_of({0, x, 0, 0}));
    const double closed = 0.5 * std::abs(std::sin(0.5 * x));
    CHECK(std::abs(negativity(out) - closed) <= 1e-12);
    CHECK(std::abs(eigen_negativity(out) - closed) <= 1e-12);
    CHECK(concurrence(out) == doctest::Approx(2.0 * negativity(out)).epsilon(1e-10));
  }
}

TEST_CASE("random pure two-qubit states: self-written eigensolver agrees with Eigen") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 300; ++trial) {
    const auto s = SpinState::normalized({cd(g(rng), g(rng)), cd(g(rng), g(rng)), cd(g(rng), g(rng)), cd(g(rng), g(rng))});
    const double n = negativity(s);
    CHECK(n == doctest::Approx(eigen_negativity(s)).epsilon(1e-10));
    CHECK(n >= 0.0);
    CHECK(n <= 0.5 + 1e-12);
    CHECK(concurrence(s) == doctest::Approx(2.0 * n).epsilon(1e-9));
  }
}

TEST_CASE("hermitian eigenvalues against Eigen on random 8x8 matrices") {
  std::mt19937_64 rng(5);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    ComplexMatrix m(8);
    Eigen::MatrixXcd e(8, 8);
    for (int i = 0; i < 8; ++i) {
      for (int j = i; j < 8; ++j) {
        const cd v = i == j ? cd(g(rng), 0) : cd(g(rng), g(rng));
        m(i, j) = v;
        m(j, i) = std::conj(v);
        e(i, j) = v;
        e(j, i) = std::conj(v);
      }
    }
    auto ours = hermitian_eigenvalues(m);
    std::sort(ours.begin(), ours.end());
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(e);
    for (int i = 0; i < 8; ++i) CHECK(ours[i] == doctest::Approx(es.eigenvalues()[i]).epsilon(1e-10));
  }
}

TEST_CASE("three-particle bipartitions") {
  // GHZ: every single-particle cut has negativity 1/2
  const double r = 1.0 / std::sqrt(2.0);
  const SpinState ghz({r, 0, 0, 0, 0, 0, 0, r});
  CHECK(negativity(ghz, {{0}}) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(negativity(ghz, {{1}}) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(negativity(ghz, {{0, 2}}) == doctest::Approx(0.5).epsilon(1e-12));
  // Bell pair on particles 0 and 1, particle 2 separate
  const auto pair = SpinState::normalized({1, 1, 0, 0, 0, 0, 1, 1});
  CHECK(negativity(pair, {{2}}) <= 1e-14);
  CHECK(negativity(pair, {{0}}) == doctest::Approx(0.5).epsilon(1e-12));
  CHECK_THROWS_AS(negativity(ghz, {{3}}), InvalidInput);
  CHECK_THROWS_AS(negativity(ghz, {{0, 0}}), InvalidInput);
  CHECK_THROWS_AS(negativity(ghz, {{0, 1, 2}}), InvalidInput);
  CHECK_THROWS_AS(concurrence(ghz), InvalidInput);
}

TEST_CASE("additivity check") {
  SUBCASE("equal phases") {
    const auto c = phase_additivity_check(std::vector<double>{1.5, 1.5, 1.5, 1.5}, 1e-12);
    CHECK(c.is_additive);
    CHECK(c.residual == 0.0);
  }
  SUBCASE("(0, pi, 0, 0) leaves a residual of pi/4") {
    const std::vector<double> phi{0, std::numbers::pi, 0, 0};
    // least-squares oracle: constant plus one main effect per spin
    Eigen::Matrix<double, 4, 3> X;
    Eigen::Vector4d y;
    for (int i = 0; i < 4; ++i) {
      X(i, 0) = 1.0;
      X(i, 1) = (i >> 1) ? -1.0 : 1.0;
      X(i, 2) = (i & 1) ? -1.0 : 1.0;
      y[i] = phi[i];
    }
    const Eigen::Vector3d beta = X.colPivHouseholderQr().solve(y);
    const double oracle = (y - X * beta).cwiseAbs().maxCoeff();
    CHECK(oracle == doctest::Approx(std::numbers::pi / 4));
    const auto c = phase_additivity_check(phi, 1e-9);
    CHECK_FALSE(c.is_additive);
    CHECK(c.residual == doctest::Approx(oracle).epsilon(1e-14));
    const auto fit = additive_fit(phi);
    for (int i = 0; i < 4; ++i) CHECK(fit[i] == doctest::Approx((X * beta)[i]).epsilon(1e-14));
  }
  SUBCASE("additive three-particle pattern") {
    std::vector<double> phi(8);
    for (int i = 0; i < 8; ++i) phi[i] = 0.3 + ((i >> 2) & 1) * 1.1 - ((i >> 1) & 1) * 0.4 + (i & 1) * 2.5;
    CHECK(phase_additivity_check(phi, 1e-13).is_additive);
  }
  CHECK_THROWS_AS(phase_additivity_check(std::vector<double>{0, 1}, 1e-9), InvalidInput);
}

TEST_CASE("entanglement report") {
  const auto r = entanglement_report(SpinState::uniform(2), table_of({0, 1.0, 0, 0}), 1e-9);
  CHECK(r.negativity == doctest::Approx(0.5 * std::sin(0.5)).epsilon(1e-12));
  REQUIRE(r.concurrence.has_value());
  CHECK(*r.concurrence == doctest::Approx(2.0 * r.negativity).epsilon(1e-10));
  CHECK_FALSE(r.is_separable_by_phase_additivity);
  CHECK(r.phase_residual == doctest::Approx(0.25));
  const auto three = entanglement_report(SpinState::uniform(3), table_of({0, 0, 0, 0, 0, 0, 0, 0}), 1e-9);
  CHECK_FALSE(three.concurrence.has_value());
  CHECK(three.is_separable_by_phase_additivity);
}

#include "medent/entanglement.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>

#include "medent/error.hpp"
#include "medent/linalg.hpp"

namespace medent {

namespace {

std::size_t particle_count(std::size_t dim) {
  if (dim < 2 || !std::has_single_bit(dim)) throw InvalidInput("state dimension must be a power of two >= 2");
  return static_cast<std::size_t>(std::countr_zero(dim));
}

// Bit mask (in index space) of the particles in the subsystem; particle 0 is
// the most significant bit.
std::size_t subsystem_mask(const Bipartition& partition, std::size_t n) {
  std::size_t mask = 0;
  for (std::size_t a : partition.subsystem) {
    if (a >= n) throw InvalidInput("bipartition index out of range");
    const std::size_t bit = std::size_t{1} << (n - 1 - a);
    if (mask & bit) throw InvalidInput("bipartition lists a particle twice");
    mask |= bit;
  }
  const std::size_t full = (std::size_t{1} << n) - 1;
  if (mask == 0 || mask == full) throw InvalidInput("bipartition must leave both sides nonempty");
  return mask;
}

}  // namespace

SpinState::SpinState(std::vector<std::complex<double>> amplitudes) : amplitudes_(std::move(amplitudes)) {
  n_ = particle_count(amplitudes_.size());
  if (std::abs(norm_squared() - 1.0) > 1e-12) throw InvalidInput("spin state is not normalized");
}

SpinState SpinState::normalized(std::vector<std::complex<double>> amplitudes) {
  double s = 0.0;
  for (const auto& a : amplitudes) s += std::norm(a);
  if (!(s > 0.0)) throw InvalidInput("cannot normalize a zero state");
  const double scale = 1.0 / std::sqrt(s);
  for (auto& a : amplitudes) a *= scale;
  return SpinState(std::move(amplitudes));
}

SpinState SpinState::uniform(std::size_t n) {
  if (n < 1 || n > 16) throw InvalidInput("uniform state supports 1..16 particles");
  const std::size_t dim = std::size_t{1} << n;
  return SpinState(std::vector<std::complex<double>>(dim, 1.0 / std::sqrt(static_cast<double>(dim))));
}

double SpinState::norm_squared() const {
  CompensatedSum s;
  for (const auto& a : amplitudes_) s.add(std::norm(a));
  return s.value();
}

SpinState evolve(const SpinState& initial, const PhaseTable& phases) {
  if (phases.entries.size() != initial.dimension()) {
    throw InvalidInput("phase table and spin state disagree on the number of particles");
  }
  std::vector<std::complex<double>> out(initial.dimension());
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = initial[i] * std::polar(1.0, phases.entries[i].phase);
  }
  // |e^{i phi}| rounding can move the norm by a few ulps
  return SpinState::normalized(std::move(out));
}

double negativity(const SpinState& state, const Bipartition& partition) {
  const std::size_t n = state.particles();
  if (n < 2) throw InvalidInput("negativity needs at least two particles");
  const std::size_t mask = subsystem_mask(partition, n);
  const std::size_t dim = state.dimension();

  ComplexMatrix pt(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t j = 0; j < dim; ++j) {
      // swap the subsystem bits of row and column
      const std::size_t ii = (i & ~mask) | (j & mask);
      const std::size_t jj = (j & ~mask) | (i & mask);
      pt(i, j) = state[ii] * std::conj(state[jj]);
    }
  }
  CompensatedSum neg;
  for (double lambda : hermitian_eigenvalues(pt)) {
    if (lambda < 0.0) neg.add(-lambda);
  }
  return neg.value();
}

double concurrence(const SpinState& state) {
  if (state.particles() != 2) throw InvalidInput("concurrence is defined here for two spins only");
  // sigma_y (x) sigma_y in the (uu, ud, du, dd) basis is the antidiagonal (-1, 1, 1, -1)
  constexpr double flip[4] = {-1.0, 1.0, 1.0, -1.0};
  std::complex<double> overlap = 0.0;
  for (std::size_t i = 0; i < 4; ++i) overlap += std::conj(state[i]) * flip[i] * std::conj(state[3 - i]);
  return std::min(1.0, std::abs(overlap));
}

std::vector<double> additive_fit(const std::vector<double>& phases) {
  const std::size_t dim = phases.size();
  const std::size_t n = particle_count(dim);
  CompensatedSum total;
  for (double p : phases) total.add(p);
  const double mean = total.value() / static_cast<double>(dim);

  // orthogonal projection onto constants plus single-spin functions: on the
  // full hypercube with uniform weights the per-particle main effects decouple
  std::vector<std::array<double, 2>> effect(n);
  for (std::size_t a = 0; a < n; ++a) {
    const std::size_t bit = std::size_t{1} << (n - 1 - a);
    CompensatedSum up;
    CompensatedSum down;
    for (std::size_t i = 0; i < dim; ++i) ((i & bit) ? down : up).add(phases[i]);
    const double half = static_cast<double>(dim / 2);
    effect[a] = {up.value() / half - mean, down.value() / half - mean};
  }
  std::vector<double> fit(dim, mean);
  for (std::size_t i = 0; i < dim; ++i) {
    for (std::size_t a = 0; a < n; ++a) {
      const std::size_t bit = std::size_t{1} << (n - 1 - a);
      fit[i] += effect[a][(i & bit) ? 1 : 0];
    }
  }
  return fit;
}

AdditivityCheck phase_additivity_check(const std::vector<double>& phases, double tol) {
  if (particle_count(phases.size()) < 2) throw InvalidInput("additivity check needs at least two particles");
  const auto fit = additive_fit(phases);
  double residual = 0.0;
  for (std::size_t i = 0; i < phases.size(); ++i) residual = std::max(residual, std::abs(phases[i] - fit[i]));
  return {residual <= tol, residual};
}

AdditivityCheck phase_additivity_check(const PhaseTable& phases, double tol) {
  return phase_additivity_check(phases.phases(), tol);
}

EntanglementReport entanglement_report(const SpinState& initial, const PhaseTable& phases, double additivity_tol,
                                       const Bipartition& partition) {
  const SpinState final_state = evolve(initial, phases);
  EntanglementReport report;
  report.negativity = negativity(final_state, partition);
  if (final_state.particles() == 2) report.concurrence = concurrence(final_state);
  const auto check = phase_additivity_check(phases, additivity_tol);
  report.is_separable_by_phase_additivity = check.is_additive;
  report.phase_residual = check.residual;
  return report;
}

}  // namespace medent

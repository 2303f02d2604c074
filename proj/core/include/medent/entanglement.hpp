#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "medent/action.hpp"
#include "medent/kinematics.hpp"

namespace medent {

/// Pure state of N spins: 2^N amplitudes indexed by SpinConfiguration::index().
class SpinState {
 public:
  /// Throws InvalidInput unless the size is a power of two >= 2 and the
  /// squared norm is 1 within 1e-12.
  explicit SpinState(std::vector<std::complex<double>> amplitudes);

  /// Rescales to unit norm first. Throws on a zero vector.
  static SpinState normalized(std::vector<std::complex<double>> amplitudes);
  /// All amplitudes 2^{-N/2}.
  static SpinState uniform(std::size_t n);

  std::size_t particles() const { return n_; }
  std::size_t dimension() const { return amplitudes_.size(); }
  const std::vector<std::complex<double>>& amplitudes() const { return amplitudes_; }
  const std::complex<double>& operator[](std::size_t i) const { return amplitudes_[i]; }
  double norm_squared() const;

 private:
  std::vector<std::complex<double>> amplitudes_;
  std::size_t n_ = 0;
};

/// Subsystem A of a bipartition, as a set of particle indices. The complement
/// is subsystem B.
struct Bipartition {
  std::vector<std::size_t> subsystem;

  static Bipartition first_vs_rest() { return {{0}}; }
};

/// A_sigma -> A_sigma exp(i phi_sigma).
SpinState evolve(const SpinState& initial, const PhaseTable& phases);

/// Sum of |negative eigenvalues| of the partial transpose of |psi><psi| over
/// the subsystem. Throws InvalidInput for N < 2 or an invalid partition.
double negativity(const SpinState& state, const Bipartition& partition = Bipartition::first_vs_rest());

/// Two-spin concurrence |<psi| sigma_y (x) sigma_y |psi*>|. Throws for N != 2.
double concurrence(const SpinState& state);

struct AdditivityCheck {
  bool is_additive = false;
  double residual = 0.0;  // max |phi - least-squares additive fit|, radians
};

/// Least-squares fit of phi_sigma to c + sum_a f_a(s_a); phases of this form
/// never entangle a product state. Throws InvalidInput for N < 2.
AdditivityCheck phase_additivity_check(const PhaseTable& phases, double tol);
/// Same on raw phases indexed by SpinConfiguration::index().
AdditivityCheck phase_additivity_check(const std::vector<double>& phases, double tol);

/// Additive least-squares fit itself.
std::vector<double> additive_fit(const std::vector<double>& phases);

struct EntanglementReport {
  double negativity = 0.0;
  std::optional<double> concurrence;  // two particles only
  bool is_separable_by_phase_additivity = false;
  double phase_residual = 0.0;
};

EntanglementReport entanglement_report(const SpinState& initial, const PhaseTable& phases, double additivity_tol,
                                       const Bipartition& partition = Bipartition::first_vs_rest());

}  // namespace medent

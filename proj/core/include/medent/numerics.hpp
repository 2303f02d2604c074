#pragma once

#include <cmath>
#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace medent {

/// Neumaier-compensated running sum. Order of additions is the caller's
/// responsibility; the result is deterministic for a fixed order.
class CompensatedSum {
 public:
  void add(double v) {
    const double t = sum_ + v;
    if (std::abs(sum_) >= std::abs(v)) {
      comp_ += (sum_ - t) + v;
    } else {
      comp_ += (v - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

 private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

struct RootResult {
  double x = 0.0;
  double f = 0.0;
  int iterations = 0;
};

/// Root of an increasing function on [lo, hi] with f(lo) <= 0 <= f(hi).
/// Newton steps from the bracket midpoint region, falling back to bisection
/// whenever a step leaves the bracket or fails to halve it. Stops when
/// |f| <= ftol or the bracket collapses to adjacent doubles.
/// Throws NumericalFailure on a missing sign change or iteration overrun.
RootResult solve_increasing(const std::function<double(double)>& f,
                            const std::function<double(double)>& df, double lo, double hi,
                            double ftol, int max_iterations = 200);

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;
  std::size_t panels = 0;
  std::size_t evaluations = 0;
};

struct QuadratureOptions {
  double abs_tol = 1e-10;
  std::size_t max_panels = 50000;
};

/// Globally adaptive Gauss-Kronrod 7/15 quadrature over [knots.front(), knots.back()].
/// Interior knots are panel boundaries that are never straddled (use them for
/// kinks of the integrand). The error estimate is |K15 - G7| per panel, floored
/// at the panel's roundoff level. Panels are refined largest-error-first with
/// deterministic tie-breaking and summed in ascending order with compensation.
/// Throws NumericalFailure if abs_tol is not met within max_panels.
QuadratureResult integrate(const std::function<double(double)>& f, std::span<const double> knots,
                           const QuadratureOptions& options);

/// Sorted, deduplicated knots restricted to [lo, hi], always including lo and hi.
/// Knots closer than rel_gap * (hi - lo) to a kept knot are merged.
std::vector<double> clean_knots(std::vector<double> knots, double lo, double hi, double rel_gap = 1e-13);

}  // namespace medent

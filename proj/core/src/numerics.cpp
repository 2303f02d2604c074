#include "medent/numerics.hpp"

#include <algorithm>
#include <array>
#include <limits>
#include <sstream>

#include "medent/error.hpp"

namespace medent {

RootResult solve_increasing(const std::function<double(double)>& f,
                            const std::function<double(double)>& df, double lo, double hi,
                            double ftol, int max_iterations) {
  double flo = f(lo);
  double fhi = f(hi);
  if (std::abs(flo) <= ftol) return {lo, flo, 0};
  if (std::abs(fhi) <= ftol) return {hi, fhi, 0};
  if (flo > 0.0 || fhi < 0.0) throw NumericalFailure("root solver: no sign change in bracket");

  double x = 0.5 * (lo + hi);
  double dx_prev = hi - lo;
  for (int it = 1; it <= max_iterations; ++it) {
    const double fx = f(x);
    if (std::abs(fx) <= ftol) return {x, fx, it};
    if (fx < 0.0) {
      lo = x;
    } else {
      hi = x;
    }
    const double width = hi - lo;
    if (width <= 2.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(lo), std::abs(hi))) {
      return {x, fx, it};
    }
    const double slope = df(x);
    double next = (slope > 0.0) ? x - fx / slope : lo - 1.0;
    const double step = std::abs(next - x);
    if (!(next > lo && next < hi) || step > 0.5 * dx_prev) {
      next = 0.5 * (lo + hi);
    }
    dx_prev = std::abs(next - x);
    x = next;
  }
  throw NumericalFailure("root solver: no convergence within iteration cap");
}

namespace {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1].
constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Panel {
  double a;
  double b;
  double value;
  double error;
};

Panel gk15(const std::function<double(double)>& f, double a, double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);
  const double fc = f(center);
  double kronrod = fc * kWgk[7];
  double gauss = fc * kWg[3];
  double abs_sum = std::abs(kronrod);
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double f1 = f(center - dx);
    const double f2 = f(center + dx);
    kronrod += kWgk[j] * (f1 + f2);
    abs_sum += kWgk[j] * (std::abs(f1) + std::abs(f2));
    if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
  }
  const double value = kronrod * half;
  const double roundoff = 50.0 * std::numeric_limits<double>::epsilon() * abs_sum * std::abs(half);
  return {a, b, value, std::max(std::abs((kronrod - gauss) * half), roundoff)};
}

struct PanelOrder {
  bool operator()(const Panel& x, const Panel& y) const {
    if (x.error != y.error) return x.error < y.error;
    return x.a > y.a;
  }
};

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, std::span<const double> knots,
                           const QuadratureOptions& options) {
  if (knots.size() < 2) throw InvalidInput("quadrature needs at least two knots");
  if (!(options.abs_tol > 0.0)) throw InvalidInput("quadrature tolerance must be positive");
  QuadratureResult result;
  if (knots.front() == knots.back()) return result;

  std::vector<Panel> heap;
  const PanelOrder order;
  for (std::size_t k = 0; k + 1 < knots.size(); ++k) {
    if (!(knots[k + 1] > knots[k])) throw InvalidInput("quadrature knots must be strictly increasing");
    heap.push_back(gk15(f, knots[k], knots[k + 1]));
    result.evaluations += 15;
  }
  std::make_heap(heap.begin(), heap.end(), order);

  const auto exact_total = [&heap] {
    CompensatedSum s;
    for (const auto& p : heap) s.add(p.error);
    return s.value();
  };

  double total_error = exact_total();
  for (;;) {
    if (total_error <= options.abs_tol) {
      // the running total drifts; only stop on the recomputed one
      total_error = exact_total();
      if (total_error <= options.abs_tol) break;
    }
    if (heap.size() >= options.max_panels) {
      std::ostringstream msg;
      msg << "quadrature: tolerance " << options.abs_tol << " not reached within " << options.max_panels
          << " panels (estimated error " << total_error << ")";
      throw NumericalFailure(msg.str());
    }
    std::pop_heap(heap.begin(), heap.end(), order);
    const Panel worst = heap.back();
    heap.pop_back();
    const double mid = 0.5 * (worst.a + worst.b);
    if (!(mid > worst.a && mid < worst.b)) {
      throw NumericalFailure("quadrature: panel width reached machine resolution");
    }
    for (const Panel& half : {gk15(f, worst.a, mid), gk15(f, mid, worst.b)}) {
      heap.push_back(half);
      std::push_heap(heap.begin(), heap.end(), order);
      total_error += half.error;
    }
    total_error -= worst.error;
    result.evaluations += 30;
  }

  std::sort(heap.begin(), heap.end(), [](const Panel& x, const Panel& y) { return x.a < y.a; });
  CompensatedSum value;
  for (const auto& p : heap) value.add(p.value);
  result.value = value.value();
  result.error = total_error;
  result.panels = heap.size();
  return result;
}

std::vector<double> clean_knots(std::vector<double> knots, double lo, double hi, double rel_gap) {
  std::vector<double> out{lo};
  if (!(hi > lo)) {
    out.push_back(hi);
    return out;
  }
  const double gap = rel_gap * (hi - lo);
  std::sort(knots.begin(), knots.end());
  for (double k : knots) {
    if (k > out.back() + gap && k < hi - gap) out.push_back(k);
  }
  out.push_back(hi);
  return out;
}

}  // namespace medent

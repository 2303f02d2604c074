#include "medent/kinematics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "medent/error.hpp"

namespace medent {

namespace {

constexpr std::array<double, 4> kEtaDiag = {-1.0, 1.0, 1.0, 1.0};
constexpr int kSpeedSamplesPerSegment = 64;

}  // namespace

Vec3 Segment::position(double t) const {
  const double h = t - t_start;
  return coeffs[0] + h * (coeffs[1] + h * (coeffs[2] + h * coeffs[3]));
}

Vec3 Segment::velocity(double t) const {
  const double h = t - t_start;
  return coeffs[1] + h * (2.0 * coeffs[2] + 3.0 * h * coeffs[3]);
}

Vec3 Segment::acceleration(double t) const {
  const double h = t - t_start;
  return 2.0 * coeffs[2] + 6.0 * h * coeffs[3];
}

Segment Segment::constant(double t0, double t1, const Vec3& x) { return {t0, t1, {x, {}, {}, {}}}; }

Segment Segment::linear(double t0, double t1, const Vec3& x0, const Vec3& v) {
  return {t0, t1, {x0, v, {}, {}}};
}

Segment Segment::hermite(double t0, double t1, const Vec3& x0, const Vec3& v0, const Vec3& x1,
                         const Vec3& v1) {
  const double h = t1 - t0;
  const Vec3 dx = x1 - x0;
  const Vec3 c2 = (3.0 / (h * h)) * dx - (1.0 / h) * (2.0 * v0 + v1);
  const Vec3 c3 = (-2.0 / (h * h * h)) * dx + (1.0 / (h * h)) * (v0 + v1);
  return {t0, t1, {x0, v0, c2, c3}};
}

Worldline::Worldline(std::vector<Segment> segments, double c) : segments_(std::move(segments)), c_(c) {
  if (segments_.empty()) throw InvalidInput("worldline needs at least one segment");
  if (!(c > 0.0)) throw InvalidInput("speed of light must be positive");

  double scale = 0.0;
  for (const auto& s : segments_) {
    if (!(s.t_end > s.t_start)) throw InvalidInput("worldline breakpoints must be strictly increasing");
    scale = std::max({scale, norm(s.position(s.t_start)), norm(s.position(s.t_end))});
  }
  const double tol = 1e-12 * scale;
  for (std::size_t k = 1; k < segments_.size(); ++k) {
    const auto& prev = segments_[k - 1];
    const auto& next = segments_[k];
    if (prev.t_end != next.t_start) {
      throw InvalidInput("worldline segments must be contiguous");
    }
    if (norm(prev.position(prev.t_end) - next.position(next.t_start)) > tol) {
      std::ostringstream msg;
      msg << "worldline position is discontinuous at t = " << next.t_start;
      throw InvalidInput(msg.str());
    }
  }
  if (max_speed() >= c_) throw InvalidInput("worldline is not subluminal");
}

Worldline Worldline::stationary(const Vec3& x, double t0, double t1) {
  if (!(t1 > t0)) throw InvalidInput("stationary worldline needs t1 > t0");
  Worldline w;
  w.segments_.push_back(Segment::constant(t0, t1, x));
  w.c_ = std::numeric_limits<double>::infinity();
  return w;
}

std::size_t Worldline::segment_index(double t) const {
  if (!contains(t)) {
    std::ostringstream msg;
    msg << "time " << t << " outside worldline domain [" << t_start() << ", " << t_end() << "]";
    throw InvalidInput(msg.str());
  }
  // first segment whose t_end is strictly greater than t (right-limit convention)
  auto it = std::upper_bound(segments_.begin(), segments_.end(), t,
                             [](double v, const Segment& s) { return v < s.t_end; });
  if (it == segments_.end()) return segments_.size() - 1;
  return static_cast<std::size_t>(it - segments_.begin());
}

Vec3 Worldline::position(double t) const { return segments_[segment_index(t)].position(t); }

Vec3 Worldline::velocity(double t) const { return segments_[segment_index(t)].velocity(t); }

std::vector<double> Worldline::breakpoints() const {
  std::vector<double> out;
  out.reserve(segments_.size() + 1);
  for (const auto& s : segments_) out.push_back(s.t_start);
  out.push_back(segments_.back().t_end);
  return out;
}

double Worldline::max_speed() const {
  double vmax = 0.0;
  for (const auto& s : segments_) {
    for (int k = 0; k <= kSpeedSamplesPerSegment; ++k) {
      const double t = s.t_start + (s.t_end - s.t_start) * k / kSpeedSamplesPerSegment;
      vmax = std::max(vmax, norm(s.velocity(t)));
    }
  }
  return vmax;
}

Worldline Worldline::extended_back(double new_start) const {
  if (new_start >= t_start()) return *this;
  Worldline w = *this;
  const auto& first = segments_.front();
  w.segments_.insert(w.segments_.begin(),
                     Segment::linear(new_start, first.t_start,
                                     first.position(first.t_start) -
                                         (first.t_start - new_start) * first.velocity(first.t_start),
                                     first.velocity(first.t_start)));
  return w;
}

Worldline Worldline::extended_forward(double new_end) const {
  if (new_end <= t_end()) return *this;
  Worldline w = *this;
  const auto& last = segments_.back();
  w.segments_.push_back(
      Segment::linear(last.t_end, new_end, last.position(last.t_end), last.velocity(last.t_end)));
  return w;
}

Kinematics4 Kinematics4::from_velocity(const Vec3& v, double c) {
  const double beta2 = norm2(v) / (c * c);
  if (!(beta2 < 1.0)) throw InvalidInput("velocity is not subluminal");
  return {{c, v.x, v.y, v.z}, 1.0 / std::sqrt(1.0 - beta2)};
}

double minkowski_dot(const std::array<double, 4>& a, const std::array<double, 4>& b) {
  return -a[0] * b[0] + a[1] * b[1] + a[2] * b[2] + a[3] * b[3];
}

double v_bilinear_em(const Kinematics4& ka, const Kinematics4& kb) { return minkowski_dot(ka.v4, kb.v4); }

Tensor4 velocity_tensor(const Kinematics4& k) {
  Tensor4 out{};
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) out[mu][nu] = k.gamma * k.v4[mu] * k.v4[nu];
  return out;
}

Tensor4 trace_reversed(const Tensor4& upper) {
  double trace = 0.0;
  for (int mu = 0; mu < 4; ++mu) trace += kEtaDiag[mu] * upper[mu][mu];
  Tensor4 out = upper;
  for (int mu = 0; mu < 4; ++mu) out[mu][mu] -= 0.5 * kEtaDiag[mu] * trace;
  return out;
}

double v_bilinear_gravity(const Kinematics4& ka, const Kinematics4& kb) {
  const Tensor4 vbar_a = trace_reversed(velocity_tensor(ka));
  const Tensor4 v_b = velocity_tensor(kb);
  // eta is diagonal, so lowering both indices of V_b multiplies by eta_mu eta_nu
  double sum = 0.0;
  for (int mu = 0; mu < 4; ++mu)
    for (int nu = 0; nu < 4; ++nu) sum += vbar_a[mu][nu] * kEtaDiag[mu] * kEtaDiag[nu] * v_b[mu][nu];
  return sum;
}

SpinConfiguration::SpinConfiguration(std::vector<Spin> spins) : spins_(std::move(spins)) {}

SpinConfiguration SpinConfiguration::from_index(std::size_t index, std::size_t n) {
  if (n == 0 || n >= 8 * sizeof(std::size_t) || index >= (std::size_t{1} << n)) {
    throw InvalidInput("spin configuration index out of range");
  }
  std::vector<Spin> spins(n);
  for (std::size_t a = 0; a < n; ++a) {
    spins[a] = ((index >> (n - 1 - a)) & 1U) ? Spin::down : Spin::up;
  }
  return SpinConfiguration(std::move(spins));
}

SpinConfiguration SpinConfiguration::from_label(const std::string& label) {
  if (label.empty()) throw InvalidInput("empty spin label");
  std::vector<Spin> spins;
  for (char ch : label) {
    if (ch == 'u') {
      spins.push_back(Spin::up);
    } else if (ch == 'd') {
      spins.push_back(Spin::down);
    } else {
      throw InvalidInput("spin label must consist of 'u' and 'd': " + label);
    }
  }
  return SpinConfiguration(std::move(spins));
}

std::vector<SpinConfiguration> SpinConfiguration::all(std::size_t n) {
  std::vector<SpinConfiguration> out;
  const std::size_t count = std::size_t{1} << n;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(from_index(i, n));
  return out;
}

std::size_t SpinConfiguration::index() const {
  std::size_t idx = 0;
  for (Spin s : spins_) idx = (idx << 1U) | (s == Spin::down ? 1U : 0U);
  return idx;
}

std::string SpinConfiguration::label() const {
  std::string out;
  for (Spin s : spins_) out.push_back(s == Spin::up ? 'u' : 'd');
  return out;
}

const char* to_string(Interaction kind) {
  return kind == Interaction::gravity ? "gravity" : "electromagnetism";
}

BranchScenario::BranchScenario(std::vector<Particle> particles, Interaction interaction,
                               TimeWindow window, PhysicalConstants constants)
    : particles_(std::move(particles)), interaction_(interaction), window_(window), constants_(constants) {
  if (particles_.empty()) throw InvalidInput("scenario needs at least one particle");
  if (!(window_.t_f >= window_.t_i)) throw InvalidInput("window requires t_f >= t_i");
  for (std::size_t a = 0; a < particles_.size(); ++a) {
    const auto& p = particles_[a];
    for (const Worldline* w : {&p.up, &p.down}) {
      if (!w->contains(window_.t_i) || !w->contains(window_.t_f)) {
        throw InvalidInput("worldline of particle " + std::to_string(a) + " does not cover the window");
      }
      if (w->max_speed() >= constants_.c()) {
        throw InvalidInput("worldline of particle " + std::to_string(a) + " is not subluminal");
      }
    }
    if (interaction_ == Interaction::gravity && !(p.mass > 0.0)) {
      throw InvalidInput("gravity requires positive mass for particle " + std::to_string(a));
    }
    if (interaction_ == Interaction::electromagnetism && (p.charge == 0.0 || !std::isfinite(p.charge))) {
      throw InvalidInput("electromagnetism requires nonzero charge for particle " + std::to_string(a));
    }
  }
}

double BranchScenario::strength(std::size_t a) const {
  const auto& p = particles_.at(a);
  return interaction_ == Interaction::gravity ? p.mass : p.charge;
}

double BranchScenario::length_scale() const {
  double scale = 0.0;
  const double t = window_.t_i;
  for (std::size_t a = 0; a < particles_.size(); ++a) {
    for (std::size_t b = a + 1; b < particles_.size(); ++b) {
      for (Spin sa : {Spin::up, Spin::down})
        for (Spin sb : {Spin::up, Spin::down})
          scale = std::max(scale, norm(particles_[a].branch(sa).position(t) -
                                       particles_[b].branch(sb).position(t)));
    }
  }
  return scale;
}

BranchScenario BranchScenario::with_window(TimeWindow w) const {
  return {particles_, interaction_, w, constants_};
}

BranchScenario BranchScenario::with_constants(const PhysicalConstants& k) const {
  return {particles_, interaction_, window_, k};
}

}  // namespace medent

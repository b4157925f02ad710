#include "periodica/signal.hpp"

#include <algorithm>
#include <numbers>
#include <random>

namespace periodica {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Index i such that xs[i] <= x <= xs[i+1]; xs strictly increasing, x inside.
std::size_t segment_of(std::span<const double> xs, double x) {
  auto it = std::upper_bound(xs.begin(), xs.end(), x);
  std::size_t i = static_cast<std::size_t>(it - xs.begin());
  if (i == 0) return 0;
  return std::min(i - 1, xs.size() - 2);
}

double lerp_on(std::span<const double> xs, std::span<const double> ys, double x) {
  const std::size_t i = segment_of(xs, x);
  const double x0 = xs[i], x1 = xs[i + 1];
  if (x == x0) return ys[i];
  if (x == x1) return ys[i + 1];
  const double w = (x - x0) / (x1 - x0);
  return ys[i] + w * (ys[i + 1] - ys[i]);
}

void require_strictly_increasing(std::span<const double> xs, const char* what) {
  for (std::size_t i = 1; i < xs.size(); ++i)
    if (!(xs[i] > xs[i - 1])) throw DomainError(std::string(what) + ": not strictly increasing");
}

}  // namespace

// --- Signal -----------------------------------------------------------------

Signal::Signal(std::vector<double> times, std::vector<double> values)
    : times_(std::move(times)), values_(std::move(values)) {
  if (times_.size() != values_.size()) throw ShapeError("Signal: times and values differ in length");
  if (times_.size() < 2) throw DomainError("Signal: need at least 2 samples");
  for (std::size_t i = 0; i < times_.size(); ++i) {
    if (!std::isfinite(times_[i]) || !std::isfinite(values_[i]))
      throw DomainError("Signal: non-finite sample at index " + std::to_string(i));
  }
  require_strictly_increasing(times_, "Signal times");
}

Signal Signal::uniform(std::vector<double> values, double t0, double dt) {
  std::vector<double> times(values.size());
  for (std::size_t i = 0; i < times.size(); ++i) times[i] = t0 + dt * static_cast<double>(i);
  return Signal(std::move(times), std::move(values));
}

double Signal::min_value() const noexcept { return *std::min_element(values_.begin(), values_.end()); }
double Signal::max_value() const noexcept { return *std::max_element(values_.begin(), values_.end()); }

double Signal::operator()(double t) const {
  if (!(t >= times_.front() && t <= times_.back()))
    throw DomainError("Signal: evaluation at t=" + std::to_string(t) + " outside sampled range");
  return lerp_on(times_, values_, t);
}

Signal Signal::with_values(std::vector<double> values) const { return Signal(times_, std::move(values)); }

// --- PeriodicTemplate ----------------------------------------------------------

PeriodicTemplate::PeriodicTemplate(std::string id, Fn fn, std::array<Fn, 3> derivatives)
    : id_(std::move(id)), fn_(std::move(fn)), derivatives_(std::move(derivatives)) {
  if (!fn_) throw DomainError("PeriodicTemplate: empty function");
}

double PeriodicTemplate::at_phase(std::int64_t j, std::int64_t m) const {
  std::int64_t r = j % m;
  if (r < 0) r += m;
  return fn_(static_cast<double>(r) / static_cast<double>(m));
}

bool PeriodicTemplate::has_analytic_derivative(int order) const {
  return order >= 1 && order <= 3 && static_cast<bool>(derivatives_[order - 1]);
}

double PeriodicTemplate::derivative(double x, int order) const {
  if (order < 1 || order > 3) throw DomainError("PeriodicTemplate::derivative: order must be 1..3");
  if (const auto& d = derivatives_[order - 1]; d) return d(x - std::floor(x));
  constexpr double h = 1e-4;
  const auto& f = *this;
  switch (order) {
    case 1:
      return (f(x + h) - f(x - h)) / (2 * h);
    case 2:
      return (f(x + h) - 2 * f(x) + f(x - h)) / (h * h);
    default:
      return (f(x + 2 * h) - 2 * f(x + h) + 2 * f(x - h) - f(x - 2 * h)) / (2 * h * h * h);
  }
}

// --- Reparam -------------------------------------------------------------------

Reparam::Reparam(std::vector<double> knots, std::vector<double> images)
    : knots_(std::move(knots)), images_(std::move(images)), periods_(0) {
  if (knots_.size() != images_.size()) throw ShapeError("Reparam: knots and images differ in length");
  if (knots_.size() < 2) throw DomainError("Reparam: need at least 2 knots");
  if (knots_.front() != 0.0 || knots_.back() != 1.0) throw DomainError("Reparam: knots must span [0,1]");
  if (images_.front() != 0.0) throw DomainError("Reparam: gamma(0) must be 0");
  require_strictly_increasing(knots_, "Reparam knots");
  require_strictly_increasing(images_, "Reparam images");
  const double n = images_.back();
  if (n != std::round(n) || n < 1) throw DomainError("Reparam: gamma(1) must be a positive integer");
  periods_ = static_cast<std::int64_t>(n);
}

Reparam Reparam::linear(std::int64_t periods) {
  if (periods < 1) throw DomainError("Reparam::linear: N must be >= 1");
  return Reparam({0.0, 1.0}, {0.0, static_cast<double>(periods)});
}

double Reparam::operator()(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("Reparam: t outside [0,1]");
  return lerp_on(knots_, images_, t);
}

double Reparam::inverse(double y) const {
  if (!(y >= 0.0 && y <= images_.back())) throw DomainError("Reparam::inverse: y outside [0,N]");
  return lerp_on(images_, knots_, y);
}

// --- SmoothReparam ---------------------------------------------------------------

SmoothReparam::SmoothReparam(std::int64_t periods, double amplitude, int harmonic)
    : periods_(periods), amplitude_(amplitude), harmonic_(harmonic) {
  if (periods < 1) throw DomainError("SmoothReparam: N must be >= 1");
  if (harmonic < 1) throw DomainError("SmoothReparam: harmonic must be >= 1");
  if (!(static_cast<double>(periods) > kTwoPi * harmonic * std::abs(amplitude)))
    throw DomainError("SmoothReparam: not strictly increasing (need N > 2 pi k |a|)");
}

double SmoothReparam::operator()(double t) const {
  if (!(t >= 0.0 && t <= 1.0)) throw DomainError("SmoothReparam: t outside [0,1]");
  if (t == 1.0) return static_cast<double>(periods_);
  return static_cast<double>(periods_) * t + amplitude_ * std::sin(kTwoPi * harmonic_ * t);
}

double SmoothReparam::derivative(double t, int order) const {
  const double w = kTwoPi * harmonic_;
  switch (order) {
    case 1:
      return static_cast<double>(periods_) + amplitude_ * w * std::cos(w * t);
    case 2:
      return -amplitude_ * w * w * std::sin(w * t);
    case 3:
      return -amplitude_ * w * w * w * std::cos(w * t);
    default:
      throw DomainError("SmoothReparam::derivative: order must be 1..3");
  }
}

double SmoothReparam::sup_derivative(int order) const {
  const double w = kTwoPi * harmonic_;
  const double a = std::abs(amplitude_);
  switch (order) {
    case 1:
      return static_cast<double>(periods_) + a * w;
    case 2:
      return a * w * w;
    case 3:
      return a * w * w * w;
    default:
      throw DomainError("SmoothReparam::sup_derivative: order must be 1..3");
  }
}

double SmoothReparam::inverse(double y) const {
  const double n = static_cast<double>(periods_);
  if (!(y >= 0.0 && y <= n)) throw DomainError("SmoothReparam::inverse: y outside [0,N]");
  if (y == 0.0) return 0.0;
  if (y == n) return 1.0;
  double lo = 0.0, hi = 1.0;
  for (int it = 0; it < 200 && hi - lo > 0.0; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    ((*this)(mid) < y ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

// --- sampling operators ------------------------------------------------------------

SamplingConfig::SamplingConfig(double omega_) : omega(omega_) {
  if (!(omega_ >= 1.0) || !std::isfinite(omega_)) throw ConfigError("SamplingConfig: omega must be >= 1");
}

Signal interpolate_F(std::span<const double> a, const SamplingConfig& cfg) {
  const auto expected = static_cast<std::size_t>(cfg.M()) + 1;
  if (a.size() != expected)
    throw ShapeError("interpolate_F: expected " + std::to_string(expected) + " samples, got " +
                     std::to_string(a.size()));
  std::vector<double> times(a.size());
  for (std::size_t m = 0; m < times.size(); ++m) times[m] = static_cast<double>(m) / cfg.omega;
  return Signal(std::move(times), std::vector<double>(a.begin(), a.end()));
}

Signal sample_one_period(const PeriodicTemplate& f, std::int64_t samples_per_period) {
  if (samples_per_period < 2) throw DomainError("sample_one_period: need >= 2 samples");
  std::vector<double> times(static_cast<std::size_t>(samples_per_period) + 1);
  std::vector<double> values(times.size());
  for (std::int64_t j = 0; j <= samples_per_period; ++j) {
    times[j] = static_cast<double>(j) / static_cast<double>(samples_per_period);
    values[j] = f.at_phase(j, samples_per_period);
  }
  return Signal(std::move(times), std::move(values));
}

// --- detrending ---------------------------------------------------------------------

Signal detrend_median(const Signal& s, double window_seconds) {
  if (!(window_seconds > 0)) throw DomainError("detrend_median: window must be positive");
  const auto times = s.times();
  const std::size_t n = s.size();
  const double dt = (times.back() - times.front()) / static_cast<double>(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs((times[i] - times[i - 1]) - dt) > 1e-6 * dt)
      throw PreconditionError("detrend_median: signal is not uniformly sampled");
  }
  const auto half = static_cast<std::size_t>(std::floor(window_seconds / dt / 2.0 + 1e-9));
  if (2 * half + 1 < 3) throw PreconditionError("detrend_median: window covers fewer than 3 samples");

  const auto values = s.values();
  std::vector<double> out(n);
  std::vector<double> scratch;
  scratch.reserve(2 * half + 1);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= half ? i - half : 0;
    const std::size_t hi = std::min(n - 1, i + half);
    scratch.assign(values.begin() + static_cast<std::ptrdiff_t>(lo),
                   values.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
    const std::size_t k = scratch.size() / 2;
    std::nth_element(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(k), scratch.end());
    double median = scratch[k];
    if (scratch.size() % 2 == 0) {
      const double below = *std::max_element(scratch.begin(), scratch.begin() + static_cast<std::ptrdiff_t>(k));
      median = 0.5 * (below + median);
    }
    out[i] = values[i] - median;
  }
  return s.with_values(std::move(out));
}

// --- random reparametrizations ----------------------------------------------------------

Reparam random_reparam(std::int64_t periods, std::uint64_t seed) {
  if (periods < 1) throw DomainError("random_reparam: N must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> unit(0.0, 1.0);

  const std::size_t draws = periods == 1 ? 1 : static_cast<std::size_t>(periods - 1);
  std::vector<double> interior;
  for (;;) {
    interior.clear();
    for (std::size_t i = 0; i < draws; ++i) interior.push_back(unit(rng));
    std::sort(interior.begin(), interior.end());
    bool ok = interior.front() > 0.0 && interior.back() < 1.0;
    for (std::size_t i = 1; ok && i < interior.size(); ++i) ok = interior[i] > interior[i - 1];
    if (ok) break;
  }

  std::vector<double> knots{0.0};
  knots.insert(knots.end(), interior.begin(), interior.end());
  knots.push_back(1.0);
  std::vector<double> images;
  if (periods == 1) {
    images = {0.0, 0.5, 1.0};
  } else {
    for (std::int64_t k = 0; k <= periods; ++k) images.push_back(static_cast<double>(k));
  }
  return Reparam(std::move(knots), std::move(images));
}

Reparam jittered_reparam(std::int64_t periods, double jitter, std::uint64_t seed) {
  if (periods < 1) throw DomainError("jittered_reparam: N must be >= 1");
  if (!(jitter >= 0.0 && jitter < 1.0)) throw DomainError("jittered_reparam: jitter must be in [0,1)");
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> sym(-1.0, 1.0);
  std::vector<double> durations(static_cast<std::size_t>(periods));
  double total = 0.0;
  for (double& d : durations) {
    d = 1.0 + jitter * sym(rng);
    total += d;
  }
  std::vector<double> knots{0.0};
  std::vector<double> images{0.0};
  double acc = 0.0;
  for (std::size_t k = 0; k + 1 < durations.size(); ++k) {
    acc += durations[k];
    knots.push_back(acc / total);
    images.push_back(static_cast<double>(k + 1));
  }
  knots.push_back(1.0);
  images.push_back(static_cast<double>(periods));
  return Reparam(std::move(knots), std::move(images));
}

}  // namespace periodica

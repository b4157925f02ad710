#pragma once

#include <array>
#include <cmath>
#include <concepts>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "periodica/errors.hpp"

namespace periodica {

/// A finite sequence of (time, value) samples read as a piecewise-linear
/// function of time.
class Signal {
 public:
  Signal(std::vector<double> times, std::vector<double> values);

  /// Samples at t0, t0 + dt, t0 + 2 dt, ...
  static Signal uniform(std::vector<double> values, double t0, double dt);

  std::size_t size() const noexcept { return values_.size(); }
  std::span<const double> times() const noexcept { return times_; }
  std::span<const double> values() const noexcept { return values_; }
  double time(std::size_t i) const { return times_.at(i); }
  double value(std::size_t i) const { return values_.at(i); }
  double t_begin() const noexcept { return times_.front(); }
  double t_end() const noexcept { return times_.back(); }
  double min_value() const noexcept;
  double max_value() const noexcept;

  /// Linear interpolation; throws DomainError outside [t_begin, t_end].
  double operator()(double t) const;

  /// Same times, new values.
  Signal with_values(std::vector<double> values) const;

 private:
  std::vector<double> times_;
  std::vector<double> values_;
};

/// A 1-periodic real function. Evaluation reduces the argument modulo 1.
class PeriodicTemplate {
 public:
  using Fn = std::function<double(double)>;

  /// `derivatives` may hold analytic first, second and third derivatives;
  /// empty entries fall back to central finite differences.
  PeriodicTemplate(std::string id, Fn fn, std::array<Fn, 3> derivatives = {});

  const std::string& id() const noexcept { return id_; }

  double operator()(double x) const { return fn_(x - std::floor(x)); }

  /// Value at phase (j mod m)/m. Identical phases give bit-identical values,
  /// which is what grid-aligned multi-period sampling relies on.
  double at_phase(std::int64_t j, std::int64_t m) const;

  /// order in {1,2,3}.
  double derivative(double x, int order) const;
  bool has_analytic_derivative(int order) const;

 private:
  std::string id_;
  Fn fn_;
  std::array<Fn, 3> derivatives_;
};

/// Ids of the five built-in templates f0..f4.
std::vector<std::string> builtin_template_ids();

/// "f0".."f4", or "fr:<r>" for the degenerate family. Throws DomainError on
/// unknown ids.
PeriodicTemplate builtin_template(std::string_view id);

/// sin(4 pi x) on [0,1/2], (1+r) sin(4 pi x) on ]1/2,1], extended 1-periodically.
PeriodicTemplate degenerate_family(double r);

/// One period given by values on a uniform grid of [0,1], periodically
/// extended and linearly interpolated. values.front() must equal values.back().
PeriodicTemplate piecewise_linear_template(std::vector<double> values,
                                           std::string id = "pl");

/// Monotone piecewise-linear bijection gamma: [0,1] -> [0,N].
class Reparam {
 public:
  Reparam(std::vector<double> knots, std::vector<double> images);

  static Reparam linear(std::int64_t periods);

  double operator()(double t) const;
  double inverse(double y) const;
  std::int64_t periods() const noexcept { return periods_; }
  std::span<const double> knots() const noexcept { return knots_; }
  std::span<const double> images() const noexcept { return images_; }

 private:
  std::vector<double> knots_;
  std::vector<double> images_;
  std::int64_t periods_;
};

/// gamma(t) = N t + a sin(2 pi k t), a C-infinity reparametrization with
/// analytic derivatives. Strictly increasing iff N > 2 pi k |a|.
class SmoothReparam {
 public:
  SmoothReparam(std::int64_t periods, double amplitude = 0.0, int harmonic = 1);

  double operator()(double t) const;
  double derivative(double t, int order) const;
  double inverse(double y) const;
  std::int64_t periods() const noexcept { return periods_; }
  double amplitude() const noexcept { return amplitude_; }
  int harmonic() const noexcept { return harmonic_; }

  /// sup over [0,1] of |gamma^(order)|, order in {1,2,3}.
  double sup_derivative(int order) const;

 private:
  std::int64_t periods_;
  double amplitude_;
  int harmonic_;
};

template <typename G>
concept PhaseMap = requires(const G& g, double t) {
  { g(t) } -> std::convertible_to<double>;
  { g.inverse(t) } -> std::convertible_to<double>;
  { g.periods() } -> std::convertible_to<std::int64_t>;
};

/// Sampling at rate omega on [0, M/omega] with M = floor(omega).
struct SamplingConfig {
  double omega;

  /// Throws ConfigError when omega < 1.
  explicit SamplingConfig(double omega);
  std::int64_t M() const noexcept { return static_cast<std::int64_t>(std::floor(omega)); }
};

/// Values f(gamma(t)) on `grid`, which must be strictly increasing in [0,1].
template <typename G>
  requires std::invocable<const G&, double>
Signal eval_template_composed(const PeriodicTemplate& f, const G& gamma,
                              std::span<const double> grid);

/// The sampling operator L: entries h(m/omega) for m = 0..M.
template <typename H>
  requires std::invocable<const H&, double>
std::vector<double> sample_L(const H& h, const SamplingConfig& cfg) {
  const auto m_max = cfg.M();
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(m_max) + 1);
  for (std::int64_t m = 0; m <= m_max; ++m) out.push_back(h(static_cast<double>(m) / cfg.omega));
  return out;
}

/// The interpolation operator F: the piecewise-linear signal through
/// (m/omega, a_m). Throws ShapeError unless a.size() == M+1.
Signal interpolate_F(std::span<const double> a, const SamplingConfig& cfg);

/// Subtract the median over a centered window of `window_seconds`, shrunk at
/// the edges. Requires uniform sampling and a window of at least 3 samples.
Signal detrend_median(const Signal& s, double window_seconds);

/// Random PL reparametrization with gamma(1) = N: N-1 uniform draws mark the
/// starts of periods 2..N (N=1 draws one interior knot mapped to 1/2).
Reparam random_reparam(std::int64_t periods, std::uint64_t seed);

/// PL reparametrization whose period durations are 1 + jitter*u, u uniform in
/// [-1,1], normalized to sum to 1. jitter in [0,1).
Reparam jittered_reparam(std::int64_t periods, double jitter, std::uint64_t seed);

/// Samples f o gamma at the times gamma^{-1}(j/m), j = 0..N m, taking values
/// f.at_phase(j, m). Noiseless signals built this way have a circle diagram
/// equal to exactly N copies of the one-period diagram.
template <PhaseMap G>
Signal sample_phase_aligned(const PeriodicTemplate& f, const G& gamma,
                            std::int64_t samples_per_period);

/// One period of f on the uniform grid j/m, j = 0..m (first == last).
Signal sample_one_period(const PeriodicTemplate& f, std::int64_t samples_per_period);

// ---------------------------------------------------------------------------

template <typename G>
  requires std::invocable<const G&, double>
Signal eval_template_composed(const PeriodicTemplate& f, const G& gamma,
                              std::span<const double> grid) {
  if (grid.size() < 2) throw DomainError("eval_template_composed: grid needs >= 2 points");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!(grid[i] >= 0.0 && grid[i] <= 1.0))
      throw DomainError("eval_template_composed: grid point outside [0,1]");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw DomainError("eval_template_composed: grid not strictly increasing");
  }
  std::vector<double> values;
  values.reserve(grid.size());
  for (double t : grid) values.push_back(f(gamma(t)));
  return Signal(std::vector<double>(grid.begin(), grid.end()), std::move(values));
}

template <PhaseMap G>
Signal sample_phase_aligned(const PeriodicTemplate& f, const G& gamma,
                            std::int64_t samples_per_period) {
  if (samples_per_period < 2) throw DomainError("sample_phase_aligned: need >= 2 samples per period");
  const std::int64_t n = gamma.periods() * samples_per_period;
  std::vector<double> times(static_cast<std::size_t>(n) + 1);
  std::vector<double> values(times.size());
  const double m = static_cast<double>(samples_per_period);
  for (std::int64_t j = 0; j <= n; ++j) {
    times[j] = j == 0 ? 0.0 : (j == n ? 1.0 : gamma.inverse(static_cast<double>(j) / m));
    values[j] = f.at_phase(j, samples_per_period);
  }
  return Signal(std::move(times), std::move(values));
}

}  // namespace periodica

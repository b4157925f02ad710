#pragma once

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <functional>
#include <limits>
#include <span>
#include <utility>
#include <vector>

#include "periodica/persistence.hpp"
#include "periodica/signal.hpp"

namespace periodica {

inline constexpr double kDefaultCircumference = 1.94;

/// birth_index of every point with persistence > 2 tau, ascending.
std::vector<std::size_t> prominent_minima(const AnnotatedDiagram& d, double tau);

struct OdometricResult {
  std::vector<std::size_t> prominent_minima;
  std::int64_t K;
  std::int64_t N;
  double tau;
  /// sequences[k][n] is the time of prominent minimum n*K + k.
  std::vector<std::vector<double>> sequences;
  /// Mean persistence of the minima in each sequence.
  std::vector<double> mean_persistence;

  /// The sequence with the deepest minima on average.
  std::size_t default_sequence() const;
};

/// Throws OdometryInconsistency when the prominent-minimum count is not a
/// multiple of N.
OdometricResult odometric_sequences(const Signal& s, const AnnotatedDiagram& d, double tau,
                                    std::int64_t N);
OdometricResult odometric_sequences(std::span<const double> times, const AnnotatedDiagram& d,
                                    double tau, std::int64_t N);

struct ToleranceRadius {
  std::vector<std::pair<double, double>> per_min_radii;  // (R-, R+)
  std::vector<double> minima;                            // phases in [0,1)
  double R;
};

/// For each local minimum x of one period, the smallest r with
/// f(x - r) > f(x) + nu and the smallest r with f(x + r) > f(x) + nu.
/// Radii that never occur are +inf. Minima are located on a 1e-4 grid;
/// only those whose circle-diagram persistence exceeds min_persistence count.
ToleranceRadius tolerance_radius(const PeriodicTemplate& f, double nu, double min_persistence = 0.0);

struct OdometricCheck {
  bool ok;
  double max_consecutive;  // max |g(t_n) - g(t_{n-1}) - 1|
  double max_pairwise;     // max |g(t_n) - g(t_m) - (n - m)|
};

template <typename G>
  requires std::invocable<const G&, double>
OdometricCheck check_odometric_property(std::span<const double> seq, const G& gamma, double bound) {
  std::vector<double> phase;
  phase.reserve(seq.size());
  for (double t : seq) phase.push_back(gamma(t));
  double cons = 0.0, pair = 0.0;
  for (std::size_t n = 1; n < phase.size(); ++n) cons = std::max(cons, std::abs(phase[n] - phase[n - 1] - 1.0));
  for (std::size_t n = 0; n < phase.size(); ++n)
    for (std::size_t m = 0; m < n; ++m)
      pair = std::max(pair, std::abs(phase[n] - phase[m] - static_cast<double>(n - m)));
  return {cons <= bound, cons, pair};
}

struct OdometryMetrics {
  std::vector<double> d_n;
  std::int64_t TS;
  std::int64_t TL;
  double CR;
  double dispersion;
  double circumference;
};

/// reference maps time to travelled distance in meters.
OdometryMetrics odometry_metrics(std::span<const double> seq, const std::function<double(double)>& reference,
                                 double C = kDefaultCircumference);

struct DisplacementSpeed {
  std::vector<double> grid;
  std::vector<double> displacement;
  std::vector<double> speed;
};

/// C * #{t_n <= t}, right-continuous.
double displacement_at(std::span<const double> seq, double C, double t);

/// Displacement and windowed speed (d(t) - d(t - w)) / w on `grid`.
DisplacementSpeed displacement_and_speed(std::span<const double> seq, double C, double window_seconds,
                                         std::span<const double> grid);
/// Same on a uniform grid from the first to the last event with step w / 4.
DisplacementSpeed displacement_and_speed(std::span<const double> seq, double C, double window_seconds);

}  // namespace periodica

#include "periodica/odometry.hpp"

#include <algorithm>
#include <cmath>

namespace periodica {

std::vector<std::size_t> prominent_minima(const AnnotatedDiagram& d, double tau) {
  if (!(tau > 0.0)) throw DomainError("prominent_minima: tau must be positive");
  std::vector<std::size_t> out;
  for (const auto& p : d.points())
    if (p.persistence() > 2.0 * tau) out.push_back(p.birth_index);
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t OdometricResult::default_sequence() const {
  const auto it = std::max_element(mean_persistence.begin(), mean_persistence.end());
  return static_cast<std::size_t>(it - mean_persistence.begin());
}

OdometricResult odometric_sequences(std::span<const double> times, const AnnotatedDiagram& d, double tau,
                                    std::int64_t N) {
  if (N < 1) throw DomainError("odometric_sequences: N must be >= 1");
  OdometricResult r;
  r.prominent_minima = prominent_minima(d, tau);
  r.N = N;
  r.tau = tau;
  const auto count = r.prominent_minima.size();
  if (count == 0 || count % static_cast<std::size_t>(N) != 0) throw OdometryInconsistency(count, N);
  r.K = static_cast<std::int64_t>(count) / N;

  std::vector<double> pers_by_index(times.size(), 0.0);
  for (const auto& p : d.points()) {
    if (p.birth_index >= times.size()) throw ShapeError("odometric_sequences: diagram does not match times");
    pers_by_index[p.birth_index] = p.persistence();
  }
  const auto K = static_cast<std::size_t>(r.K);
  r.sequences.assign(K, {});
  r.mean_persistence.assign(K, 0.0);
  for (std::size_t i = 0; i < count; ++i) {
    const std::size_t idx = r.prominent_minima[i];
    r.sequences[i % K].push_back(times[idx]);
    r.mean_persistence[i % K] += pers_by_index[idx] / static_cast<double>(N);
  }
  return r;
}

OdometricResult odometric_sequences(const Signal& s, const AnnotatedDiagram& d, double tau, std::int64_t N) {
  return odometric_sequences(s.times(), d, tau, N);
}

namespace {

constexpr std::int64_t kRadiusGrid = 10000;
constexpr double kRadiusTol = 1e-7;

// Smallest r > 0 (within one period) with f(x + dir * r) - fx > nu.
double one_sided_radius(const PeriodicTemplate& f, std::int64_t i0, double fx, double nu, int dir) {
  const double x = static_cast<double>(i0) / kRadiusGrid;
  for (std::int64_t j = 1; j <= kRadiusGrid; ++j) {
    if (f.at_phase(i0 + dir * j, kRadiusGrid) - fx <= nu) continue;
    double lo = static_cast<double>(j - 1) / kRadiusGrid;
    double hi = static_cast<double>(j) / kRadiusGrid;
    while (hi - lo > kRadiusTol) {
      const double mid = 0.5 * (lo + hi);
      (f(x + dir * mid) - fx > nu ? hi : lo) = mid;
    }
    return hi;
  }
  return std::numeric_limits<double>::infinity();
}

}  // namespace

ToleranceRadius tolerance_radius(const PeriodicTemplate& f, double nu, double min_persistence) {
  if (!(nu > 0.0)) throw DomainError("tolerance_radius: nu must be positive");
  std::vector<double> values(static_cast<std::size_t>(kRadiusGrid) + 1);
  for (std::int64_t i = 0; i <= kRadiusGrid; ++i) values[static_cast<std::size_t>(i)] = f.at_phase(i, kRadiusGrid);
  const auto diagram = diagram_circle(values);

  ToleranceRadius out{{}, {}, 0.0};
  for (const auto& p : diagram.points()) {
    if (!(p.persistence() > min_persistence)) continue;
    const auto i0 = static_cast<std::int64_t>(p.birth_index);
    const double fx = values[p.birth_index];
    const double left = one_sided_radius(f, i0, fx, nu, -1);
    const double right = one_sided_radius(f, i0, fx, nu, +1);
    out.minima.push_back(static_cast<double>(i0) / kRadiusGrid);
    out.per_min_radii.emplace_back(left, right);
    out.R = std::max({out.R, left, right});
  }
  return out;
}

OdometryMetrics odometry_metrics(std::span<const double> seq, const std::function<double(double)>& reference,
                                 double C) {
  if (seq.size() < 2) throw DomainError("odometry_metrics: need at least 2 events");
  if (!(C > 0.0)) throw DomainError("odometry_metrics: circumference must be positive");
  OdometryMetrics m{{}, 0, 0, 0.0, 0.0, C};
  double prev = reference(seq[0]);
  double abs_dev = 0.0;
  for (std::size_t n = 1; n < seq.size(); ++n) {
    const double cur = reference(seq[n]);
    const double dn = cur - prev;
    prev = cur;
    m.d_n.push_back(dn);
    if (dn < 0.9 * C) ++m.TS;
    if (dn > 1.1 * C) ++m.TL;
    abs_dev += std::abs(dn - C);
  }
  const auto count = static_cast<double>(m.d_n.size());
  m.CR = 1.0 - static_cast<double>(m.TS + m.TL) / count;
  m.dispersion = abs_dev / count;
  return m;
}

double displacement_at(std::span<const double> seq, double C, double t) {
  const auto k = std::upper_bound(seq.begin(), seq.end(), t) - seq.begin();
  return C * static_cast<double>(k);
}

DisplacementSpeed displacement_and_speed(std::span<const double> seq, double C, double window_seconds,
                                         std::span<const double> grid) {
  if (seq.empty()) throw DomainError("displacement_and_speed: no events");
  if (!(window_seconds > 0.0)) throw DomainError("displacement_and_speed: window must be positive");
  DisplacementSpeed out;
  out.grid.assign(grid.begin(), grid.end());
  for (double t : grid) {
    const double d = displacement_at(seq, C, t);
    out.displacement.push_back(d);
    out.speed.push_back((d - displacement_at(seq, C, t - window_seconds)) / window_seconds);
  }
  return out;
}

DisplacementSpeed displacement_and_speed(std::span<const double> seq, double C, double window_seconds) {
  if (seq.empty()) throw DomainError("displacement_and_speed: no events");
  if (!(window_seconds > 0.0)) throw DomainError("displacement_and_speed: window must be positive");
  const double step = window_seconds / 4.0;
  std::vector<double> grid;
  const auto steps = static_cast<std::size_t>(std::floor((seq.back() - seq.front()) / step + 1e-9));
  for (std::size_t i = 0; i <= steps; ++i) grid.push_back(seq.front() + step * static_cast<double>(i));
  return displacement_and_speed(seq, C, window_seconds, grid);
}

}  // namespace periodica

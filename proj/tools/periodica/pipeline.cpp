#include "pipeline.hpp"

#include <algorithm>
#include <cmath>

namespace periodica::cli {

Simulation simulate(const SimulationParams& p) {
  if (p.periods < 1) throw ConfigError("simulate: periods must be >= 1");
  if (!(p.duration > 0.0)) throw ConfigError("simulate: duration must be > 0");
  if (!(p.sigma >= 0.0)) throw ConfigError("simulate: sigma must be >= 0");
  if (!(p.l > 0.0)) throw ConfigError("simulate: l must be > 0");
  const SamplingConfig sampling(p.omega * p.duration);  // samples over normalized time
  const auto f = builtin_template(p.template_id);

  Reparam gamma = p.reparam == "random"     ? random_reparam(p.periods, derive_seed(p.seed, {1}))
                  : p.reparam == "jittered" ? jittered_reparam(p.periods, p.jitter, derive_seed(p.seed, {1}))
                                            : throw ConfigError("simulate: reparam must be 'random' or 'jittered'");

  const auto M = sampling.M();
  std::vector<double> u(static_cast<std::size_t>(M) + 1), times(u.size()), values(u.size());
  for (std::int64_t m = 0; m <= M; ++m) {
    const auto i = static_cast<std::size_t>(m);
    times[i] = static_cast<double>(m) / p.omega;
    u[i] = std::min(1.0, times[i] / p.duration);
    values[i] = f(gamma(u[i]));
  }
  if (p.sigma > 0.0) {
    const auto w = sample_gp_interpolated(u, GPConfig{p.sigma, p.l, derive_seed(p.seed, {2})}, p.gp_support);
    for (std::size_t i = 0; i < values.size(); ++i) values[i] += w[i];
  }
  return {Signal(std::move(times), std::move(values)), io::ReparamDocument{p.template_id, std::move(gamma), p.duration}};
}

std::function<double(double)> truth_reference(const io::ReparamDocument& truth, double C) {
  return [gamma = truth.gamma, duration = truth.duration, C](double t) {
    return C * gamma(std::clamp(t / duration, 0.0, 1.0));
  };
}

namespace {

// Midpoint of the longest scale interval on which h equals n.
std::optional<double> scale_for(const ClusterScan& scan, std::int64_t n) {
  std::optional<double> best;
  double best_len = -1.0;
  for (std::size_t i = 0; i < scan.values.size(); ++i) {
    if (scan.values[i] != n) continue;
    const double lo = scan.breakpoints[i];
    const double hi = std::min(i + 1 < scan.breakpoints.size() ? scan.breakpoints[i + 1] : scan.domain_max,
                               scan.domain_max);
    if (hi > lo && hi - lo > best_len) {
      best_len = hi - lo;
      best = 0.5 * (lo + hi);
    }
  }
  return best;
}

}  // namespace

OdometryOutcome run_odometry(const Signal& s, const OdometryOptions& opt,
                             const std::function<double(double)>& reference) {
  const Signal input = opt.detrend ? detrend_median(s, opt.window_seconds) : s;
  const auto d = diagram_interval(input);

  std::optional<EstimatorReport> estimate;
  std::int64_t N = 0;
  double tau = 0.0;
  if (opt.periods && opt.tau) {
    N = *opt.periods;
    tau = *opt.tau;
  } else if (opt.tau) {
    tau = *opt.tau;
    N = n_hat_cluster(d, tau);
    estimate = EstimatorReport{N, EstimatorMethod::cluster, tau, std::nullopt};
  } else if (opt.periods) {
    N = *opt.periods;
    const auto t = scale_for(scan_h(d), N);
    if (!t) throw ModelInconsistency("odometry: no scale at which the cluster estimate equals N=" + std::to_string(N));
    tau = *t;
  } else {
    estimate = n_hat_auto(d);
    if (!estimate->tau_used) throw ModelInconsistency("odometry: no periodic structure found (estimate is 1)");
    N = estimate->n_hat;
    tau = *estimate->tau_used;
  }

  OdometryOutcome out{estimate, odometric_sequences(input, d, tau, N), std::nullopt};
  if (reference) {
    const auto& seq = out.result.sequences[out.result.default_sequence()];
    out.metrics = odometry_metrics(seq, reference, opt.circumference);
  }
  return out;
}

}  // namespace periodica::cli

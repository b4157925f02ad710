// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on any
// failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "bench.hpp"
#include "oracles.hpp"
#include "periodica/periodica.hpp"
#include "pipeline.hpp"

using namespace periodica;

namespace {

constexpr double kPi = std::numbers::pi;

struct Outcome {
  bool pass;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double time_limit;  // seconds, 0 when unbounded
  std::function<Outcome()> check;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::vector<double> noisy_copy(const Signal& clean, std::span<const double> w) {
  std::vector<double> v(clean.values().begin(), clean.values().end());
  for (std::size_t i = 0; i < v.size(); ++i) v[i] += w[i];
  return v;
}

// 1 -----------------------------------------------------------------------------
Outcome persistence_oracle() {
  std::mt19937_64 rng(1001);
  int mismatches = 0;
  for (int trial = 0; trial < 1000; ++trial) {
    std::vector<double> v;
    if (trial % 2) {
      v = oracle::random_signal(rng, 50, 5);
    } else {
      const auto len = std::uniform_int_distribution<std::size_t>(2, 50)(rng);
      std::normal_distribution<double> n;
      for (std::size_t i = 0; i < len; ++i) v.push_back(n(rng));
    }
    if (oracle::sorted_pairs(diagram_interval(v)) != oracle::sorted_pairs(brute_force_diagram(v))) ++mismatches;
  }
  return {mismatches == 0, fmt("%d/1000 mismatches", mismatches)};
}

// 2 -----------------------------------------------------------------------------
Outcome circle_homogeneity() {
  int bad = 0, cases = 0;
  for (const auto& id : builtin_template_ids()) {
    const auto f = builtin_template(id);
    const auto base = oracle::sorted_pairs(diagram_circle(sample_one_period(f, 256)));
    for (std::int64_t n = 1; n <= 10; ++n) {
      oracle::Pairs expected;
      for (std::int64_t k = 0; k < n; ++k) expected.insert(expected.end(), base.begin(), base.end());
      std::sort(expected.begin(), expected.end());
      const auto got = oracle::sorted_pairs(diagram_circle(sample_phase_aligned(f, random_reparam(n, 7 * n), 256)));
      ++cases;
      if (got != expected) ++bad;
    }
  }
  return {bad == 0, fmt("%d/%d templates x N not exact", bad, cases)};
}

// 3 -----------------------------------------------------------------------------
Outcome bottleneck_stability() {
  std::mt19937_64 rng(3003);
  std::uniform_real_distribution<double> u(-1, 1);
  int bad = 0;
  double worst_slack = 1e300;
  for (int trial = 0; trial < 200; ++trial) {
    const auto len = std::uniform_int_distribution<std::size_t>(2, 300)(rng);
    std::vector<double> v(len), w(len);
    const double amp = 0.1 * std::abs(u(rng));
    double sup = 0;
    for (std::size_t i = 0; i < len; ++i) {
      v[i] = std::sin(0.3 * static_cast<double>(i)) + 0.5 * u(rng);
      const double noise = amp * u(rng);
      w[i] = v[i] + noise;
      sup = std::max(sup, std::abs(w[i] - v[i]));
    }
    const double db = bottleneck(diagram_interval(v), diagram_interval(w));
    worst_slack = std::min(worst_slack, sup - db);
    if (db > sup + 1e-9) ++bad;
  }
  return {bad == 0, fmt("%d/200 violations, min(|w| - d_B) = %.3g", bad, worst_slack)};
}

// 4 -----------------------------------------------------------------------------
Outcome noiseless_exactness() {
  std::mt19937_64 rng(4004);
  std::uniform_int_distribution<std::int64_t> pick(5, 50);
  int bad = 0, total = 0;
  for (const auto& id : builtin_template_ids()) {
    const auto f = builtin_template(id);
    if (n_exact(to_measure(diagram_circle(sample_one_period(f, 64)))) != 1)
      return {false, id + " is degenerate on its sampling grid"};
    for (int trial = 0; trial < 100; ++trial) {
      const auto n = pick(rng);
      const auto s = sample_phase_aligned(f, random_reparam(n, rng()), 64);
      ++total;
      if (n_exact(to_measure(diagram_circle(s))) != n) ++bad;
    }
  }
  return {bad == 0, fmt("%d/%d wrong", bad, total)};
}

// 5 -----------------------------------------------------------------------------
Outcome n_stability() {
  std::mt19937_64 rng(5005);
  const auto ids = builtin_template_ids();
  std::uniform_int_distribution<std::size_t> pick_t(0, ids.size() - 1);
  std::uniform_int_distribution<std::int64_t> pick_n(2, 20);
  std::uniform_real_distribution<double> u01(0, 1);
  const std::vector<double> lscales{0.01, 0.05, 0.2};
  constexpr std::int64_t m = 64;
  int ball_ok = 0, cluster_ok = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const auto f = builtin_template(ids[pick_t(rng)]);
    const double delta = separation_delta(to_measure(diagram_circle(sample_one_period(f, m))));
    const auto n = pick_n(rng);
    const auto clean = sample_phase_aligned(f, random_reparam(n, rng()), m);
    const double eps = (0.2 + 0.8 * u01(rng)) * delta / 6.0 - 1e-9;
    const double tau = 2 * eps + (delta / 3 - 2 * eps) * (0.001 + 0.998 * u01(rng));
    const GaussianProcessSampler sampler(clean.times(), lscales[trial % 3]);
    const auto w = clipped_gp(sampler, eps * (0.3 + u01(rng)), rng(), eps);
    auto v = noisy_copy(clean, w);
    v.back() = v.front();
    const auto d = diagram_circle(v);
    ball_ok += n_hat_ball(d, tau) == n ? 1 : 0;
    cluster_ok += n_hat_cluster(d, tau) == n ? 1 : 0;
  }
  return {ball_ok == 200 && cluster_ok == 200, fmt("ball %d/200, cluster %d/200", ball_ok, cluster_ok)};
}

// 6 -----------------------------------------------------------------------------
Outcome realize_round_trip() {
  std::mt19937_64 rng(6006);
  std::uniform_int_distribution<int> count(0, 8), mult(1, 4), level(1, 99);
  int bad = 0;
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<MeasureAtom> atoms{{-0.5, 100.5, 1}};
    const int k = count(rng);
    for (int i = 0; i < k; ++i) {
      double b = level(rng) + 0.25 * (trial % 3), d = level(rng);
      if (b == d) continue;
      if (b > d) std::swap(b, d);
      bool dup = false;
      for (const auto& a : atoms) dup = dup || (a.birth == b && a.death == d);
      if (!dup) atoms.push_back({b, d, mult(rng)});
    }
    const PersistenceMeasure m(atoms);
    if (!(to_measure(diagram_circle(realize_diagram(m))) == m)) ++bad;
  }
  return {bad == 0, fmt("%d/100 measures not reproduced", bad)};
}

// 7 -----------------------------------------------------------------------------
Outcome interpolation_bound() {
  const auto f = builtin_template("f0");
  double worst_ratio = 0;
  std::ostringstream detail;
  for (std::int64_t n : {1, 3}) {
    for (double omega : {100.0, 200.0}) {
      const SmoothReparam gamma(n, 0.1);
      auto h = [&](double t) { return f(gamma(t)); };
      const SamplingConfig cfg(omega);
      const auto T = interpolate_F(sample_L(h, cfg), cfg);
      const double err = oracle::dense_sup_error([&](double t) { return T(t); }, h, 0.0, T.t_end(), 400001);
      const double g1 = static_cast<double>(n) + 0.2 * kPi, g2 = 0.4 * kPi * kPi;
      const double bound = 2.0 / (omega * omega) * (4 * kPi * kPi * g1 * g1 + 2 * kPi * g2);
      worst_ratio = std::max(worst_ratio, err / bound);
      detail << "N=" << n << ",w=" << omega << ":" << fmt("%.3f", err / bound) << " ";
    }
  }
  return {worst_ratio <= 1.5, "error/bound " + detail.str()};
}

// 8 -----------------------------------------------------------------------------
Outcome odometry_bound() {
  std::mt19937_64 rng(8008);
  std::uniform_int_distribution<std::int64_t> pick_n(2, 10);
  std::uniform_int_distribution<int> pick_pairs(1, 2);
  std::uniform_real_distribution<double> u01(0, 1);
  constexpr std::int64_t m = 40;  // divisible by every knot count used below
  int count_ok = 0, dev_ok = 0, compliant = 0;
  double worst = 0;
  while (compliant < 100) {
    const int pairs = pick_pairs(rng);
    const auto values = oracle::random_pl_period(rng, pairs, 5);
    const auto f = piecewise_linear_template(values);
    const auto one = diagram_circle(sample_one_period(f, m));
    const double delta = separation_delta(to_measure(one));
    if (n_exact(to_measure(one)) != 1) continue;
    const auto K = static_cast<std::int64_t>(one.size());
    const double eps = (0.2 + 0.8 * u01(rng)) * delta / 6.0 - 1e-9;
    const double tau = 2 * eps + (delta / 3 - 2 * eps) * (0.001 + 0.998 * u01(rng));
    const auto n = pick_n(rng);
    const auto gamma = random_reparam(n, rng());
    const auto clean = sample_phase_aligned(f, gamma, m);
    const GaussianProcessSampler sampler(clean.times(), 0.02);
    auto v = noisy_copy(clean, clipped_gp(sampler, eps, rng(), eps));
    v.back() = v.front();
    ++compliant;
    const auto d = diagram_circle(v);
    const auto idx = prominent_minima(d, tau);
    if (static_cast<std::int64_t>(idx.size()) != n * K) continue;
    ++count_ok;
    const auto r = odometric_sequences(clean.times(), d, tau, n);
    const double bound = 2 * tolerance_radius(f, tau + 2 * eps).R + 2.0 / m;
    bool ok = true;
    for (const auto& seq : r.sequences) {
      const auto chk = check_odometric_property(seq, gamma, bound);
      worst = std::max(worst, chk.max_consecutive / bound);
      ok = ok && chk.ok;
    }
    dev_ok += ok ? 1 : 0;
  }
  return {count_ok == 100 && dev_ok == 100,
          fmt("count NK %d/100, deviation within bound %d/100, worst deviation/bound %.3f", count_ok, dev_ok, worst)};
}

// 9 -----------------------------------------------------------------------------
Outcome degenerate_family_auto() {
  const std::vector<double> rs{0.2, 0.5, 0.9, 1.1, 1.5};
  const std::vector<std::int64_t> expected{2, 2, 2, 1, 1};
  bool ok = true;
  std::ostringstream detail;
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const auto d = diagram_circle(sample_one_period(degenerate_family(rs[i]), 4000));
    const auto scan = scan_h(d);
    const auto rep = n_hat_auto(scan);
    detail << "r=" << rs[i] << ":" << rep.n_hat;
    if (rep.n_hat != expected[i]) {
      ok = false;
      detail << " (plateaus";
      for (std::size_t k = 0; k < scan.values.size(); ++k) {
        const double hi = k + 1 < scan.breakpoints.size() ? scan.breakpoints[k + 1] : scan.domain_max;
        detail << " h=" << scan.values[k] << ":" << fmt("%.4f", hi - scan.breakpoints[k]);
      }
      detail << ")";
    }
    detail << " ";
  }
  return {ok, detail.str()};
}

// 10 ----------------------------------------------------------------------------
Outcome benchmark_trend() {
  cli::ExperimentConfig cfg;
  cfg.templates = {"f0", "f2"};
  cfg.trials = 50;
  cfg.sigma_grid = {0.05, 0.3};
  cfg.l_grid = {0.2};
  cfg.seed = 10010;
  const auto rows = cli::run_benchmark(cfg, 1);
  bool ok = true;
  std::ostringstream detail;
  for (const auto& a : rows) {
    if (a.estimator != "auto_cluster") continue;
    for (const auto& z : rows) {
      if (z.estimator != "zero_crossings_oracle" || z.template_id != a.template_id || z.sigma != a.sigma) continue;
      detail << a.template_id << "/" << a.sigma << ":" << fmt("%.2f", a.success_rate) << " vs "
             << fmt("%.2f", z.success_rate) << " ";
      if (a.success_rate < z.success_rate - 0.05) ok = false;
    }
    if (a.template_id == "f0" && a.sigma == 0.05 && a.success_rate < 0.95) ok = false;
  }
  return {ok, "auto vs zc " + detail.str()};
}

// 11 ----------------------------------------------------------------------------
Outcome simulated_odometry() {
  cli::SimulationParams p;
  p.template_id = "f0";
  p.periods = 40;
  p.sigma = 0.1;
  p.omega = 125;
  p.duration = 60;
  p.seed = 11011;
  const auto sim = cli::simulate(p);
  cli::OdometryOptions opt;
  const auto out = cli::run_odometry(sim.signal, opt, cli::truth_reference(sim.truth, opt.circumference));
  if (!out.metrics) return {false, "no metrics"};
  const auto& m = *out.metrics;
  const bool ok = out.result.N == 40 && m.CR >= 0.95 && m.dispersion <= 0.1 * m.circumference;
  return {ok, fmt("N=%lld CR=%.3f dispersion=%.4f m (limit %.3f)", static_cast<long long>(out.result.N), m.CR,
                  m.dispersion, 0.1 * m.circumference)};
}

// 12 ----------------------------------------------------------------------------
Outcome bound_evaluators() {
  double worst_rel = 0;
  for (double kappa : {0.25, 0.5, 1.0, 2.0, 3.0, 4.5, 6.0})
    for (double l : {0.1, 0.5, 1.0, 2.0, 10.0}) {
      const double lib = bound_gaussian_process({.tau = 2 * kappa, .sigma = 1.0, .l = l});
      const double ref = oracle::gp_bound_high_precision(kappa, l);
      worst_rel = std::max(worst_rel, std::abs(lib - ref) / std::abs(ref));
    }
  const std::int64_t M = 25;
  const double alpha = 2.2, sigma = 1.0;
  const int draws = 100000;
  int hits = 0;
  for (int s = 0; s < draws; ++s) {
    const auto w = sample_iid_gaussian(M, sigma, derive_seed(12012, {static_cast<std::uint64_t>(s)}));
    double mx = 0;
    for (double x : w) mx = std::max(mx, std::abs(x));
    hits += mx <= alpha ? 1 : 0;
  }
  const double p = bound_white_noise({.tau = 2 * alpha, .sigma = sigma, .omega = static_cast<double>(M)}, true);
  const double se = std::sqrt(p * (1 - p) / draws);
  const double z = (static_cast<double>(hits) / draws - p) / se;
  return {worst_rel <= 1e-12 && std::abs(z) <= 3,
          fmt("gp max rel err %.2e, white MC %.4f vs %.4f (z=%.2f)", worst_rel, static_cast<double>(hits) / draws, p,
              z)};
}

// 13 ----------------------------------------------------------------------------
Outcome min_max_min() {
  std::mt19937_64 rng(13013);
  int bad = 0, pairs = 0;
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<double> v;
    if (trial % 2) {
      v = oracle::random_signal(rng, 80, 7);
    } else {
      const auto len = std::uniform_int_distribution<std::size_t>(2, 80)(rng);
      std::normal_distribution<double> n;
      for (std::size_t i = 0; i < len; ++i) v.push_back(n(rng));
    }
    const auto d = diagram_interval(v);
    const double delta = separation_delta(to_measure(d));
    const auto minima = oracle::local_minima(v);
    for (std::size_t k = 1; k < minima.size(); ++k) {
      double peak = -1e300;
      for (std::size_t c = minima[k - 1]; c <= minima[k]; ++c) peak = std::max(peak, v[c]);
      ++pairs;
      if (peak < std::max(v[minima[k - 1]], v[minima[k]]) + 2 * delta - 1e-9) ++bad;
    }
  }
  return {bad == 0, fmt("%d/%d consecutive pairs violate", bad, pairs)};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria{
      {1, "persistence matches brute-force oracle", 10, persistence_oracle},
      {2, "circle diagram homogeneity", 5, circle_homogeneity},
      {3, "bottleneck stability", 30, bottleneck_stability},
      {4, "noiseless exact period count", 0, noiseless_exactness},
      {5, "ball and cluster estimators under bounded noise", 0, n_stability},
      {6, "diagram realization round trip", 0, realize_round_trip},
      {7, "sampling interpolation bound", 0, interpolation_bound},
      {8, "odometric deviation bound", 0, odometry_bound},
      {9, "degenerate family auto estimate", 0, degenerate_family_auto},
      {10, "benchmark trend versus zero crossings", 0, benchmark_trend},
      {11, "simulated drive odometry", 30, simulated_odometry},
      {12, "bound evaluators", 0, bound_evaluators},
      {13, "min-max-min property", 0, min_max_min},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.check();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::string timing = fmt("%.2fs", secs);
    if (c.time_limit > 0) {
      timing += fmt(" (limit %.0fs)", c.time_limit);
      if (secs >= c.time_limit) {
        o.pass = false;
        o.detail += "; over time limit";
      }
    }
    std::printf("%s %2d %s: %s [%s]\n", o.pass ? "PASS" : "FAIL", c.id, c.name, o.detail.c_str(), timing.c_str());
    std::fflush(stdout);
    failures += o.pass ? 0 : 1;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}

#include "bench.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <map>
#include <mutex>
#include <ostream>
#include <random>
#include <set>
#include <thread>

#include <json.hpp>

#include "periodica/periodica.hpp"

namespace periodica::cli {

using nlohmann::json;

void ExperimentConfig::validate() const {
  if (templates.empty()) throw ConfigError("bench config: templates must be non-empty");
  for (const auto& t : templates) (void)builtin_template(t);
  if (n_min < 1 || n_max < n_min) throw ConfigError("bench config: n_range must satisfy 1 <= lo <= hi");
  if (trials < 1) throw ConfigError("bench config: trials must be >= 1");
  if (sigma_grid.empty() || l_grid.empty()) throw ConfigError("bench config: sigma_grid and l_grid must be non-empty");
  for (double s : sigma_grid)
    if (!(s >= 0.0)) throw ConfigError("bench config: sigma values must be >= 0");
  for (double l : l_grid)
    if (!(l > 0.0)) throw ConfigError("bench config: l values must be > 0");
  if (estimators.empty()) throw ConfigError("bench config: estimators must be non-empty");
  for (const auto& e : estimators)
    if (e != "auto_cluster" && e != "zero_crossings_oracle") throw ConfigError("bench config: unknown estimator '" + e + "'");
  if (samples_per_period < 4) throw ConfigError("bench config: samples_per_period must be >= 4");
  if (gp_support < 2 || gp_support > static_cast<std::int64_t>(kGaussianProcessCapacity))
    throw ConfigError("bench config: gp_support must be in [2, 5000]");
}

ExperimentConfig experiment_config_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("bench config: ") + e.what(), 0);
  }
  if (!j.is_object()) throw ParseError("bench config: expected a JSON object", 0);
  static const std::set<std::string> known{"templates", "n_range", "trials", "sigma_grid", "l_grid", "seed",
                                           "estimators", "samples_per_period", "gp_support"};
  ExperimentConfig cfg;
  try {
    for (const auto& [key, value] : j.items()) {
      if (!known.contains(key)) throw ConfigError("bench config: unknown key '" + key + "'");
    }
    if (j.contains("templates")) cfg.templates = j["templates"].get<std::vector<std::string>>();
    if (j.contains("n_range")) {
      const auto r = j["n_range"].get<std::vector<std::int64_t>>();
      if (r.size() != 2) throw ConfigError("bench config: n_range must be [lo, hi]");
      cfg.n_min = r[0];
      cfg.n_max = r[1];
    }
    if (j.contains("trials")) cfg.trials = j["trials"].get<std::int64_t>();
    if (j.contains("sigma_grid")) cfg.sigma_grid = j["sigma_grid"].get<std::vector<double>>();
    if (j.contains("l_grid")) cfg.l_grid = j["l_grid"].get<std::vector<double>>();
    if (j.contains("seed")) cfg.seed = j["seed"].get<std::uint64_t>();
    if (j.contains("estimators")) cfg.estimators = j["estimators"].get<std::vector<std::string>>();
    if (j.contains("samples_per_period")) cfg.samples_per_period = j["samples_per_period"].get<std::int64_t>();
    if (j.contains("gp_support")) cfg.gp_support = j["gp_support"].get<std::int64_t>();
  } catch (const json::exception& e) {
    throw ParseError(std::string("bench config: ") + e.what(), 0);
  }
  cfg.validate();
  return cfg;
}

std::int64_t crossings_per_period(std::string_view template_id) {
  const auto f = builtin_template(template_id);
  const auto d = diagram_circle(sample_one_period(f, 10000).values());
  std::int64_t count = 0;
  for (const auto& p : d.points())
    if (p.birth < 0.0 && p.death > 0.0) ++count;
  return std::max<std::int64_t>(2, 2 * count);
}

std::vector<BenchRow> run_benchmark(const ExperimentConfig& cfg, unsigned threads) {
  cfg.validate();
  const std::size_t nt = cfg.templates.size(), ns = cfg.sigma_grid.size(), nl = cfg.l_grid.size();
  const auto trials = static_cast<std::size_t>(cfg.trials);

  std::vector<PeriodicTemplate> templates;
  std::vector<std::int64_t> crossings;
  for (const auto& id : cfg.templates) {
    templates.push_back(builtin_template(id));
    crossings.push_back(crossings_per_period(id));
  }
  std::vector<double> support(static_cast<std::size_t>(cfg.gp_support));
  for (std::size_t i = 0; i < support.size(); ++i)
    support[i] = static_cast<double>(i) / static_cast<double>(support.size() - 1);
  std::vector<GaussianProcessSampler> samplers;
  for (double l : cfg.l_grid) samplers.emplace_back(support, l);

  const bool run_auto = std::find(cfg.estimators.begin(), cfg.estimators.end(), "auto_cluster") != cfg.estimators.end();
  const bool run_zc =
      std::find(cfg.estimators.begin(), cfg.estimators.end(), "zero_crossings_oracle") != cfg.estimators.end();

  // hits[((t * ns + s) * nl + l) * 2 + e][trial]
  std::vector<std::vector<char>> hits(nt * ns * nl * 2, std::vector<char>(trials, 0));

  auto run_trial = [&](std::size_t k) {
    std::mt19937_64 rng(derive_seed(cfg.seed, {1, k}));
    const std::int64_t N = std::uniform_int_distribution<std::int64_t>(cfg.n_min, cfg.n_max)(rng);
    const Reparam gamma = random_reparam(N, derive_seed(cfg.seed, {2, k}));
    std::vector<Signal> clean;
    for (const auto& f : templates) clean.push_back(sample_phase_aligned(f, gamma, cfg.samples_per_period));
    const auto times = clean.front().times();
    for (std::size_t s = 0; s < ns; ++s) {
      for (std::size_t l = 0; l < nl; ++l) {
        const auto w = sample_gp_interpolated(times, samplers[l], support, cfg.sigma_grid[s],
                                              derive_seed(cfg.seed, {3, k, s, l}));
        for (std::size_t t = 0; t < nt; ++t) {
          std::vector<double> values(clean[t].values().begin(), clean[t].values().end());
          for (std::size_t i = 0; i < values.size(); ++i) values[i] += w[i];
          const Signal noisy = clean[t].with_values(std::move(values));
          const std::size_t cell = ((t * ns + s) * nl + l) * 2;
          if (run_auto) hits[cell][k] = n_hat_auto(diagram_interval(noisy)).n_hat == N;
          if (run_zc) hits[cell + 1][k] = zero_crossings_estimate(noisy, crossings[t]) == N;
        }
      }
    }
  };

  const unsigned workers = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(trials)));
  if (workers == 1) {
    for (std::size_t k = 0; k < trials; ++k) run_trial(k);
  } else {
    std::atomic<std::size_t> next{0};
    std::exception_ptr failure;
    std::mutex failure_mutex;
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        for (std::size_t k = next++; k < trials; k = next++) {
          try {
            run_trial(k);
          } catch (...) {
            std::lock_guard lock(failure_mutex);
            if (!failure) failure = std::current_exception();
          }
        }
      });
    }
    for (auto& th : pool) th.join();
    if (failure) std::rethrow_exception(failure);
  }

  std::vector<BenchRow> rows;
  for (std::size_t t = 0; t < nt; ++t) {
    for (std::size_t s = 0; s < ns; ++s) {
      for (std::size_t l = 0; l < nl; ++l) {
        for (const auto& est : cfg.estimators) {
          const std::size_t cell = ((t * ns + s) * nl + l) * 2 + (est == "auto_cluster" ? 0 : 1);
          const auto ok = std::count(hits[cell].begin(), hits[cell].end(), 1);
          rows.push_back({cfg.templates[t], cfg.sigma_grid[s], cfg.l_grid[l], est,
                          static_cast<double>(ok) / static_cast<double>(trials), cfg.trials});
        }
      }
    }
  }
  return rows;
}

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows) {
  const auto old = out.precision(std::numeric_limits<double>::max_digits10);
  out << "template,sigma,l,estimator,success_rate,trials\n";
  for (const auto& r : rows)
    out << r.template_id << ',' << r.sigma << ',' << r.l << ',' << r.estimator << ',' << r.success_rate << ','
        << r.trials << '\n';
  out.precision(old);
}

}  // namespace periodica::cli

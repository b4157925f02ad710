#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace periodica::cli {

struct ExperimentConfig {
  std::vector<std::string> templates{"f0", "f1", "f2", "f3", "f4"};
  std::int64_t n_min = 5;
  std::int64_t n_max = 50;
  std::int64_t trials = 50;
  std::vector<double> sigma_grid{1e-4, 0.01, 0.05, 0.3, 1.0, 6.0};
  std::vector<double> l_grid{0.01, 0.02, 0.05, 0.1, 0.2, 0.4};
  std::uint64_t seed = 0;
  std::vector<std::string> estimators{"auto_cluster", "zero_crossings_oracle"};
  std::int64_t samples_per_period = 32;
  std::int64_t gp_support = 2000;

  void validate() const;
};

/// Missing keys keep their defaults; unknown keys are rejected.
ExperimentConfig experiment_config_from_json(std::string_view text);

struct BenchRow {
  std::string template_id;
  double sigma;
  double l;
  std::string estimator;
  double success_rate;
  std::int64_t trials;
};

/// One row per (template, sigma, l, estimator), in config order. Output does
/// not depend on `threads`.
std::vector<BenchRow> run_benchmark(const ExperimentConfig& cfg, unsigned threads = 1);

void write_bench_csv(std::ostream& out, const std::vector<BenchRow>& rows);

/// Sign changes per period of a template: twice the number of its
/// one-period diagram points born below zero and dying above it.
std::int64_t crossings_per_period(std::string_view template_id);

}  // namespace periodica::cli

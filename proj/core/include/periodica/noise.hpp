#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "periodica/signal.hpp"

namespace periodica {

inline constexpr std::size_t kGaussianProcessCapacity = 5000;

struct GPConfig {
  double sigma;
  double l;
  std::uint64_t seed;

  void validate() const;
};

/// Standard normal CDF.
double phi(double x);

/// Draws of a centered GP with covariance sigma^2 exp(-(s-t)^2 / (2 l^2)) on
/// a fixed grid. The unit-variance factor is computed once and reused, so
/// many draws on the same grid are cheap.
class GaussianProcessSampler {
 public:
  GaussianProcessSampler(std::span<const double> grid, double l);
  ~GaussianProcessSampler();
  GaussianProcessSampler(GaussianProcessSampler&&) noexcept;
  GaussianProcessSampler& operator=(GaussianProcessSampler&&) noexcept;

  std::vector<double> sample(double sigma, std::uint64_t seed) const;
  std::size_t size() const noexcept { return grid_.size(); }
  double l() const noexcept { return l_; }
  /// Jitter (relative to unit variance) that made the factorization succeed.
  double jitter() const noexcept { return jitter_; }

 private:
  struct Factor;
  std::vector<double> grid_;
  double l_;
  double jitter_ = 0.0;
  std::unique_ptr<Factor> factor_;
};

std::vector<double> sample_gp(std::span<const double> grid, const GPConfig& cfg);

/// GP draw on `support_points` uniform points of [lo, hi] linearly
/// interpolated to `times`, for grids too large to factor directly.
std::vector<double> sample_gp_interpolated(std::span<const double> times, const GPConfig& cfg,
                                           std::size_t support_points);
std::vector<double> sample_gp_interpolated(std::span<const double> times, const GaussianProcessSampler& support,
                                           std::span<const double> support_grid, double sigma,
                                           std::uint64_t seed);

/// Rejection-samples until the sup norm is below eps (1000 attempts), then
/// clips to [-eps, eps].
std::vector<double> clipped_gp(std::span<const double> grid, const GPConfig& cfg, double eps);
std::vector<double> clipped_gp(const GaussianProcessSampler& sampler, double sigma, std::uint64_t seed,
                               double eps);

std::vector<double> sample_iid_gaussian(std::size_t n, double sigma, std::uint64_t seed);

struct BoundInputs {
  double tau;
  double sigma;
  double l = 1.0;
  double omega = 1.0;
  double c_f_gamma = 0.0;

  double kappa() const { return tau / (2.0 * sigma); }
  double alpha() const { return tau / 2.0 - c_f_gamma / (omega * omega); }
};

/// Lower bound on the probability that the ball estimator is correct under
/// GP noise. literal: 1 - (e^{-k^2/2} / (l^2 pi) + 2 phi(-k)).
/// corrected: 1 - (e^{-k^2/2} / (pi l) + 2 phi(-k)).
double bound_gaussian_process(const BoundInputs& b, bool corrected = false);

/// Same under i.i.d. sampled noise. literal: (1 - phi(alpha/sigma))^omega.
/// corrected: (1 - 2 phi(-alpha/sigma))^M, M = floor(omega). 0 when alpha <= 0.
double bound_white_noise(const BoundInputs& b, bool corrected = false);

/// |f''| |g'|^2 + |f'| |g''| + (|f'''| |g'|^3 + 3 |f''| |g'| |g''| + |f'| |g'''|) / 2
/// with sup norms over one period of f and over [0,1] for g.
double c_f_gamma(const PeriodicTemplate& f, const SmoothReparam& gamma);
/// Piecewise-linear reparametrizations are not twice differentiable.
[[noreturn]] double c_f_gamma(const PeriodicTemplate& f, const Reparam& gamma);

/// sup over [0,1] of |f^(order)| on a 1e-4 grid.
double template_sup_derivative(const PeriodicTemplate& f, int order);

}  // namespace periodica

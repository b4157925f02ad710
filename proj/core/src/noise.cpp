#include "periodica/noise.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "periodica/seed.hpp"

namespace periodica {

void GPConfig::validate() const {
  if (!(sigma >= 0.0) || !std::isfinite(sigma)) throw ConfigError("GPConfig: sigma must be >= 0");
  if (!(l > 0.0) || !std::isfinite(l)) throw ConfigError("GPConfig: l must be > 0");
}

double phi(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// --- sampler -------------------------------------------------------------------

struct GaussianProcessSampler::Factor {
  Eigen::MatrixXd lower;
};

GaussianProcessSampler::GaussianProcessSampler(std::span<const double> grid, double l)
    : grid_(grid.begin(), grid.end()), l_(l) {
  if (grid_.empty()) throw DomainError("GaussianProcessSampler: empty grid");
  if (grid_.size() > kGaussianProcessCapacity)
    throw CapacityError("GaussianProcessSampler: more than 5000 grid points");
  if (!(l > 0.0)) throw ConfigError("GaussianProcessSampler: l must be > 0");

  const auto n = static_cast<Eigen::Index>(grid_.size());
  Eigen::MatrixXd cov(n, n);
  const double inv = 1.0 / (2.0 * l * l);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j <= i; ++j) {
      const double d = grid_[static_cast<std::size_t>(i)] - grid_[static_cast<std::size_t>(j)];
      cov(i, j) = cov(j, i) = std::exp(-d * d * inv);
    }
  }
  for (double jitter = 1e-10; jitter <= 1e-4 * 1.0000001; jitter *= 10.0) {
    Eigen::MatrixXd k = cov;
    k.diagonal().array() += jitter;
    Eigen::LLT<Eigen::MatrixXd> llt(k);
    if (llt.info() == Eigen::Success) {
      factor_ = std::make_unique<Factor>(Factor{llt.matrixL()});
      jitter_ = jitter;
      return;
    }
  }
  throw NumericError("GaussianProcessSampler: covariance factorization failed at maximal jitter");
}

GaussianProcessSampler::~GaussianProcessSampler() = default;
GaussianProcessSampler::GaussianProcessSampler(GaussianProcessSampler&&) noexcept = default;
GaussianProcessSampler& GaussianProcessSampler::operator=(GaussianProcessSampler&&) noexcept = default;

std::vector<double> GaussianProcessSampler::sample(double sigma, std::uint64_t seed) const {
  if (!(sigma >= 0.0)) throw ConfigError("GaussianProcessSampler: sigma must be >= 0");
  const auto n = static_cast<Eigen::Index>(grid_.size());
  std::vector<double> out(grid_.size(), 0.0);
  if (sigma == 0.0) return out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal;
  Eigen::VectorXd z(n);
  for (Eigen::Index i = 0; i < n; ++i) z(i) = normal(rng);
  const Eigen::VectorXd x = factor_->lower.triangularView<Eigen::Lower>() * z;
  for (Eigen::Index i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = sigma * x(i);
  return out;
}

std::vector<double> sample_gp(std::span<const double> grid, const GPConfig& cfg) {
  cfg.validate();
  if (cfg.sigma == 0.0) {
    if (grid.size() > kGaussianProcessCapacity) throw CapacityError("sample_gp: more than 5000 grid points");
    return std::vector<double>(grid.size(), 0.0);
  }
  return GaussianProcessSampler(grid, cfg.l).sample(cfg.sigma, cfg.seed);
}

std::vector<double> sample_gp_interpolated(std::span<const double> times, const GaussianProcessSampler& support,
                                           std::span<const double> support_grid, double sigma,
                                           std::uint64_t seed) {
  if (support_grid.size() != support.size())
    throw ShapeError("sample_gp_interpolated: support grid does not match the sampler");
  const auto draw = support.sample(sigma, seed);
  const Signal path(std::vector<double>(support_grid.begin(), support_grid.end()), draw);
  std::vector<double> out;
  out.reserve(times.size());
  for (double t : times) out.push_back(path(std::clamp(t, path.t_begin(), path.t_end())));
  return out;
}

std::vector<double> sample_gp_interpolated(std::span<const double> times, const GPConfig& cfg,
                                           std::size_t support_points) {
  cfg.validate();
  if (times.empty()) return {};
  if (support_points < 2) throw DomainError("sample_gp_interpolated: need >= 2 support points");
  if (cfg.sigma == 0.0) return std::vector<double>(times.size(), 0.0);
  const double lo = *std::min_element(times.begin(), times.end());
  double hi = *std::max_element(times.begin(), times.end());
  if (hi == lo) hi = lo + 1.0;
  std::vector<double> grid(support_points);
  for (std::size_t i = 0; i < support_points; ++i)
    grid[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(support_points - 1);
  grid.back() = hi;
  const GaussianProcessSampler sampler(grid, cfg.l);
  return sample_gp_interpolated(times, sampler, grid, cfg.sigma, cfg.seed);
}

namespace {

double sup_norm(std::span<const double> v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

template <typename Draw>
std::vector<double> reject_or_clip(Draw&& draw, std::uint64_t seed, double eps) {
  if (!(eps > 0.0)) throw DomainError("clipped_gp: eps must be positive");
  constexpr int kAttempts = 1000;
  std::vector<double> w;
  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    w = draw(attempt == 0 ? seed : derive_seed(seed, {static_cast<std::uint64_t>(attempt)}));
    if (sup_norm(w) < eps) return w;
  }
  const double bound = std::nextafter(eps, 0.0);
  for (double& x : w) x = std::clamp(x, -bound, bound);
  return w;
}

}  // namespace

std::vector<double> clipped_gp(const GaussianProcessSampler& sampler, double sigma, std::uint64_t seed,
                               double eps) {
  return reject_or_clip([&](std::uint64_t s) { return sampler.sample(sigma, s); }, seed, eps);
}

std::vector<double> clipped_gp(std::span<const double> grid, const GPConfig& cfg, double eps) {
  cfg.validate();
  if (cfg.sigma == 0.0) return reject_or_clip([&](std::uint64_t) { return sample_gp(grid, cfg); }, cfg.seed, eps);
  const GaussianProcessSampler sampler(grid, cfg.l);
  return clipped_gp(sampler, cfg.sigma, cfg.seed, eps);
}

std::vector<double> sample_iid_gaussian(std::size_t n, double sigma, std::uint64_t seed) {
  if (!(sigma >= 0.0)) throw ConfigError("sample_iid_gaussian: sigma must be >= 0");
  std::vector<double> out(n, 0.0);
  if (sigma == 0.0) return out;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, sigma);
  for (double& x : out) x = normal(rng);
  return out;
}

// --- bounds ----------------------------------------------------------------------

double bound_gaussian_process(const BoundInputs& b, bool corrected) {
  if (!(b.sigma > 0.0) || !(b.tau > 0.0)) throw DomainError("bound_gaussian_process: tau and sigma must be > 0");
  if (!(b.l > 0.0)) throw DomainError("bound_gaussian_process: l must be > 0");
  const double k = b.kappa();
  const double crossing = corrected ? 1.0 / (std::numbers::pi * b.l) : 1.0 / (b.l * b.l * std::numbers::pi);
  return 1.0 - (crossing * std::exp(-k * k / 2.0) + 2.0 * phi(-k));
}

double bound_white_noise(const BoundInputs& b, bool corrected) {
  if (!(b.sigma > 0.0)) throw DomainError("bound_white_noise: sigma must be > 0");
  if (!(b.omega >= 1.0)) throw ConfigError("bound_white_noise: omega must be >= 1");
  const double a = b.alpha();
  if (a <= 0.0) return 0.0;
  if (corrected) {
    const double m = std::floor(b.omega);
    return std::pow(1.0 - 2.0 * phi(-a / b.sigma), m);
  }
  return std::pow(1.0 - phi(a / b.sigma), b.omega);
}

double template_sup_derivative(const PeriodicTemplate& f, int order) {
  constexpr int kGrid = 10000;
  double m = 0.0;
  for (int i = 0; i < kGrid; ++i) m = std::max(m, std::abs(f.derivative(static_cast<double>(i) / kGrid, order)));
  return m;
}

double c_f_gamma(const PeriodicTemplate& f, const SmoothReparam& gamma) {
  const double f1 = template_sup_derivative(f, 1);
  const double f2 = template_sup_derivative(f, 2);
  const double f3 = template_sup_derivative(f, 3);
  const double g1 = gamma.sup_derivative(1);
  const double g2 = gamma.sup_derivative(2);
  const double g3 = gamma.sup_derivative(3);
  return f2 * g1 * g1 + f1 * g2 + 0.5 * (f3 * g1 * g1 * g1 + 3.0 * f2 * g1 * g2 + f1 * g3);
}

double c_f_gamma(const PeriodicTemplate&, const Reparam&) {
  throw PreconditionError("c_f_gamma: requires a smooth reparametrization, got a piecewise-linear one");
}

}  // namespace periodica

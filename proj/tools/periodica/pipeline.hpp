#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>

#include "periodica/periodica.hpp"
#include "periodica/io.hpp"

namespace periodica::cli {

/// Raised when the data do not support the requested model, e.g. no scale
/// at which the cluster estimator equals the requested period count.
class ModelInconsistency : public Error {
 public:
  using Error::Error;
};

struct SimulationParams {
  std::string template_id = "f0";
  std::int64_t periods = 10;
  double sigma = 0.0;
  double l = 0.05;
  double omega = 125.0;
  std::uint64_t seed = 0;
  double duration = 1.0;
  std::string reparam = "jittered";  // or "random"
  double jitter = 0.3;
  std::size_t gp_support = 2000;
};

struct Simulation {
  Signal signal;
  io::ReparamDocument truth;
};

/// S(t) = f(gamma(t / duration)) + W(t / duration) at t = m / omega,
/// m = 0..floor(omega * duration). W is a GP in normalized time.
Simulation simulate(const SimulationParams& p);

struct OdometryOptions {
  std::optional<std::int64_t> periods;
  std::optional<double> tau;
  double circumference = kDefaultCircumference;
  bool detrend = true;
  double window_seconds = 5.0;
};

struct OdometryOutcome {
  std::optional<EstimatorReport> estimate;
  OdometricResult result;
  std::optional<OdometryMetrics> metrics;
};

/// detrend -> interval diagram -> (auto N / tau) -> sequences -> metrics.
/// reference maps time to metres; metrics use the default sequence.
OdometryOutcome run_odometry(const Signal& s, const OdometryOptions& opt,
                             const std::function<double(double)>& reference = {});

/// Distance function C * gamma(t / duration) for a simulated signal.
std::function<double(double)> truth_reference(const io::ReparamDocument& truth, double C);

}  // namespace periodica::cli

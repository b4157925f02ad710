#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "periodica/diagram.hpp"
#include "periodica/persistence.hpp"
#include "periodica/signal.hpp"

namespace periodica {

std::int64_t gcd_of(std::span<const std::int64_t> values);

/// gcd of the multiplicities; 1 on an empty measure.
std::int64_t n_exact(const PersistenceMeasure& m);

/// Points with persistence > 2 tau are ball centers; every diagram point
/// counts toward ball membership.
std::int64_t n_hat_ball(const AnnotatedDiagram& d, double tau);

struct Cluster {
  std::vector<std::size_t> members;  // indices into d.points()
  bool diagonal;
};

/// Connected components of the graph on the points plus a diagonal
/// pseudo-node, linking pairs closer than tau.
std::vector<Cluster> single_linkage_partition(const AnnotatedDiagram& d, double tau);

std::int64_t n_hat_cluster(const AnnotatedDiagram& d, double tau);

/// h(tau) = n_hat_cluster(d, tau), piecewise constant. values[i] holds on
/// (breakpoints[i], breakpoints[i+1]], the last value on (breakpoints.back(), inf).
/// breakpoints[0] == 0 and adjacent values differ.
struct ClusterScan {
  std::vector<double> breakpoints;
  std::vector<std::int64_t> values;
  double domain_max;

  std::int64_t at(double tau) const;
};

ClusterScan scan_h(const AnnotatedDiagram& d);

enum class EstimatorMethod { exact, ball, cluster, cluster_auto, zero_crossings };

std::string to_string(EstimatorMethod m);

struct EstimatorReport {
  std::int64_t n_hat;
  EstimatorMethod method;
  std::optional<double> tau_used;
  std::optional<std::pair<double, double>> longest_interval;
};

/// Value n > 1 of h held over the longest tau-interval inside
/// (0, domain_max]; ties go to the larger n. n = 1 without tau if h never
/// exceeds 1.
EstimatorReport n_hat_auto(const AnnotatedDiagram& d);
EstimatorReport n_hat_auto(const ClusterScan& scan);

/// Sign changes between consecutive samples divided by crossings_per_period,
/// rounded, at least 1. A zero sample keeps the sign before it.
std::int64_t zero_crossings_estimate(const Signal& s, std::int64_t crossings_per_period);
std::int64_t count_zero_crossings(std::span<const double> values);

}  // namespace periodica

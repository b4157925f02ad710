#pragma once

// Reference implementations used only by the tests. None of them share code
// with the library routine they check.

#include <cstdint>
#include <functional>
#include <random>
#include <span>
#include <utility>
#include <vector>

#include "periodica/diagram.hpp"
#include "periodica/signal.hpp"

namespace periodica::oracle {

using Pairs = std::vector<std::pair<double, double>>;

/// Sorted (birth, death) multiset.
Pairs sorted_pairs(const AnnotatedDiagram& d);

/// Minimum over all bijections of the augmented point sets (each side plus
/// diagonal copies of the other side) of the maximum matched cost.
/// Factorial cost: n + m <= 8.
double exhaustive_bottleneck(std::span<const PlanePoint> a, std::span<const PlanePoint> b);

/// Median of each centered window by full sort, window shrunk at the edges.
std::vector<double> rolling_median(std::span<const double> v, std::size_t half);

/// The gp bound evaluated in 50-digit arithmetic.
double gp_bound_high_precision(double kappa, double l);

/// The two-sided white-noise bound evaluated in 50-digit arithmetic.
double white_corrected_high_precision(double alpha, double sigma, std::int64_t M);

/// max over a dense grid of |a - b|.
double dense_sup_error(const std::function<double(double)>& a, const std::function<double(double)>& b,
                       double lo, double hi, std::size_t points);

/// Random PL periodic template values: `pairs` alternating minima and maxima
/// on a grid of `per_segment` points per monotone piece, first == last.
std::vector<double> random_pl_period(std::mt19937_64& rng, int pairs, int per_segment);

/// Random integer-valued signal of length in [2, max_len] (many ties).
std::vector<double> random_signal(std::mt19937_64& rng, std::size_t max_len, int levels);

/// Indices of strict local minima after plateau collapse (interval).
std::vector<std::size_t> local_minima(std::span<const double> v);

}  // namespace periodica::oracle

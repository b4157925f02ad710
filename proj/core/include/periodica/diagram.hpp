#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "periodica/persistence.hpp"
#include "periodica/signal.hpp"

namespace periodica {

struct PlanePoint {
  double birth;
  double death;
  friend bool operator==(const PlanePoint&, const PlanePoint&) = default;
};

struct MeasureAtom {
  double birth;
  double death;
  std::int64_t multiplicity;
  friend bool operator==(const MeasureAtom&, const MeasureAtom&) = default;
};

/// A finite sum of point masses. Atoms have pairwise distinct support and
/// positive multiplicity; they are kept sorted by (birth, death).
class PersistenceMeasure {
 public:
  PersistenceMeasure() = default;
  explicit PersistenceMeasure(std::vector<MeasureAtom> atoms);

  std::span<const MeasureAtom> atoms() const noexcept { return atoms_; }
  std::size_t support_size() const noexcept { return atoms_.size(); }
  bool empty() const noexcept { return atoms_.empty(); }
  std::int64_t total_mass() const noexcept;
  /// Mass at exactly (birth, death); 0 off the support.
  std::int64_t multiplicity(double birth, double death) const noexcept;

  friend bool operator==(const PersistenceMeasure&, const PersistenceMeasure&) = default;

 private:
  std::vector<MeasureAtom> atoms_;
};

/// Delta_tau = {(b, d) : d - b <= 2 tau}.
struct DiagonalBand {
  double tau;
  bool contains(double birth, double death) const noexcept { return death - birth <= 2.0 * tau; }
};

/// L-infinity distance to the diagonal, (d - b) / 2.
inline double diagonal_distance(double birth, double death) noexcept { return (death - birth) / 2.0; }

inline double linf(double b1, double d1, double b2, double d2) noexcept {
  const double db = b1 > b2 ? b1 - b2 : b2 - b1;
  const double dd = d1 > d2 ? d1 - d2 : d2 - d1;
  return db > dd ? db : dd;
}

/// Points closer than merge_tol (inclusive, chained) are grouped; a group of
/// identical points keeps its coordinates, otherwise the mean is used.
PersistenceMeasure to_measure(std::span<const PlanePoint> points, double merge_tol = 0.0);
PersistenceMeasure to_measure(const AnnotatedDiagram& d, double merge_tol = 0.0);

std::vector<PlanePoint> plane_points(const AnnotatedDiagram& d);
/// Each atom repeated according to its multiplicity.
std::vector<PlanePoint> plane_points(const PersistenceMeasure& m);

/// min over distinct support pairs of their L-infinity distance and over the
/// support of the distance to the diagonal.
double separation_delta(const PersistenceMeasure& m);

/// Total mass in the open L-infinity ball of radius tau around p.
std::int64_t count_ball(const PersistenceMeasure& m, PlanePoint p, double tau);

/// Exact bottleneck distance. At most 500 points per side.
double bottleneck(std::span<const PlanePoint> a, std::span<const PlanePoint> b);
double bottleneck(const AnnotatedDiagram& a, const AnnotatedDiagram& b);
double bottleneck(const PersistenceMeasure& a, const PersistenceMeasure& b);

inline constexpr std::size_t kBottleneckCapacity = 500;

/// One period of a PL function whose circle diagram is m.
Signal realize_diagram(const PersistenceMeasure& m);

/// Knot times for a zigzag with `intervals` segments. If `stretch_first` the
/// first segment is 10% longer than the others.
std::vector<double> zigzag_knots(std::size_t intervals, bool stretch_first);

/// True when values (first == last, the last dropped) repeat with a period
/// shorter than their length.
bool is_cyclically_periodic(std::span<const double> values);

PersistenceMeasure divide_measure(const PersistenceMeasure& m, std::int64_t n);

/// Sum of persistences / 2.
double total_persistence(const PersistenceMeasure& m);

}  // namespace periodica

#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "periodica/signal.hpp"

namespace periodica {

enum class DomainKind { interval, circle };

struct PersistencePoint {
  double birth;
  double death;
  /// Sample index of the local minimum that created this point.
  std::size_t birth_index;

  double persistence() const noexcept { return death - birth; }
  friend bool operator==(const PersistencePoint&, const PersistencePoint&) = default;
};

/// 0-dimensional sublevel-set persistence diagram in which every point
/// remembers its birth minimum. The essential class is reported as
/// (min, max).
class AnnotatedDiagram {
 public:
  AnnotatedDiagram(std::vector<PersistencePoint> points, DomainKind kind, std::size_t essential_index);

  std::span<const PersistencePoint> points() const noexcept { return points_; }
  std::size_t size() const noexcept { return points_.size(); }
  bool empty() const noexcept { return points_.empty(); }
  DomainKind domain_kind() const noexcept { return kind_; }
  std::size_t essential_index() const noexcept { return essential_index_; }
  const PersistencePoint& essential() const;

  /// (max S - min S) / 2, the largest distance of any point to the diagonal.
  double half_range() const;

 private:
  std::vector<PersistencePoint> points_;
  DomainKind kind_;
  std::size_t essential_index_;
};

/// Union-find sweep over the path graph. Plateaus are collapsed to their
/// first sample; ties are broken by (value, index).
AnnotatedDiagram diagram_interval(std::span<const double> values);
AnnotatedDiagram diagram_interval(const Signal& s);

/// Same sweep on the cycle obtained by identifying the first and last
/// sample, which must agree within 1e-9.
AnnotatedDiagram diagram_circle(std::span<const double> values);
AnnotatedDiagram diagram_circle(const Signal& s);

/// Quadratic reference: components of every sublevel set are scanned
/// directly and each component is tracked through its lexicographic minimum.
/// Shares no code with the sweep. Limited to 10^4 samples.
AnnotatedDiagram brute_force_diagram(std::span<const double> values);

}  // namespace periodica

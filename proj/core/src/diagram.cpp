#include "periodica/diagram.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <numeric>
#include <queue>

#include "periodica/union_find.hpp"

namespace periodica {

namespace {

bool atom_less(const MeasureAtom& a, const MeasureAtom& b) {
  return a.birth < b.birth || (a.birth == b.birth && a.death < b.death);
}

// Hopcroft-Karp on a bipartite graph given by adjacency lists of the left side.
class BipartiteMatcher {
 public:
  BipartiteMatcher(std::size_t left, std::size_t right) : adj_(left), right_(right) {}

  void add_edge(std::size_t u, std::size_t v) { adj_[u].push_back(v); }

  std::size_t max_matching() {
    const std::size_t n = adj_.size();
    match_l_.assign(n, kFree);
    match_r_.assign(right_, kFree);
    dist_.assign(n, 0);
    std::size_t result = 0;
    while (bfs()) {
      for (std::size_t u = 0; u < n; ++u)
        if (match_l_[u] == kFree && dfs(u)) ++result;
    }
    return result;
  }

 private:
  static constexpr std::size_t kFree = std::numeric_limits<std::size_t>::max();
  static constexpr std::size_t kInf = std::numeric_limits<std::size_t>::max();

  bool bfs() {
    std::queue<std::size_t> q;
    bool found = false;
    for (std::size_t u = 0; u < adj_.size(); ++u) {
      if (match_l_[u] == kFree) {
        dist_[u] = 0;
        q.push(u);
      } else {
        dist_[u] = kInf;
      }
    }
    while (!q.empty()) {
      const std::size_t u = q.front();
      q.pop();
      for (std::size_t v : adj_[u]) {
        const std::size_t w = match_r_[v];
        if (w == kFree) {
          found = true;
        } else if (dist_[w] == kInf) {
          dist_[w] = dist_[u] + 1;
          q.push(w);
        }
      }
    }
    return found;
  }

  bool dfs(std::size_t u) {
    for (std::size_t v : adj_[u]) {
      const std::size_t w = match_r_[v];
      if (w == kFree || (dist_[w] == dist_[u] + 1 && dfs(w))) {
        match_l_[u] = v;
        match_r_[v] = u;
        return true;
      }
    }
    dist_[u] = kInf;
    return false;
  }

  std::vector<std::vector<std::size_t>> adj_;
  std::size_t right_;
  std::vector<std::size_t> match_l_, match_r_, dist_;
};

// Left: a_0..a_{n-1}, then diagonal copies of b. Right: b_0..b_{m-1}, then
// diagonal copies of a. Diagonal-to-diagonal edges are free.
bool matchable_within(std::span<const PlanePoint> a, std::span<const PlanePoint> b, double t) {
  const std::size_t n = a.size(), m = b.size();
  BipartiteMatcher g(n + m, m + n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m; ++j)
      if (linf(a[i].birth, a[i].death, b[j].birth, b[j].death) <= t) g.add_edge(i, j);
    if (diagonal_distance(a[i].birth, a[i].death) <= t) g.add_edge(i, m + i);
  }
  for (std::size_t j = 0; j < m; ++j) {
    if (diagonal_distance(b[j].birth, b[j].death) <= t) g.add_edge(n + j, j);
    for (std::size_t i = 0; i < n; ++i) g.add_edge(n + j, m + i);
  }
  return g.max_matching() == n + m;
}

}  // namespace

// --- PersistenceMeasure ---------------------------------------------------------

PersistenceMeasure::PersistenceMeasure(std::vector<MeasureAtom> atoms) : atoms_(std::move(atoms)) {
  std::sort(atoms_.begin(), atoms_.end(), atom_less);
  for (std::size_t i = 0; i < atoms_.size(); ++i) {
    if (atoms_[i].multiplicity < 1) throw DomainError("PersistenceMeasure: multiplicity must be >= 1");
    if (!std::isfinite(atoms_[i].birth) || !std::isfinite(atoms_[i].death))
      throw DomainError("PersistenceMeasure: non-finite atom");
    if (i > 0 && atoms_[i].birth == atoms_[i - 1].birth && atoms_[i].death == atoms_[i - 1].death)
      throw DomainError("PersistenceMeasure: duplicate support point");
  }
}

std::int64_t PersistenceMeasure::total_mass() const noexcept {
  std::int64_t s = 0;
  for (const auto& a : atoms_) s += a.multiplicity;
  return s;
}

std::int64_t PersistenceMeasure::multiplicity(double birth, double death) const noexcept {
  for (const auto& a : atoms_)
    if (a.birth == birth && a.death == death) return a.multiplicity;
  return 0;
}

std::vector<PlanePoint> plane_points(const AnnotatedDiagram& d) {
  std::vector<PlanePoint> out;
  out.reserve(d.size());
  for (const auto& p : d.points()) out.push_back({p.birth, p.death});
  return out;
}

std::vector<PlanePoint> plane_points(const PersistenceMeasure& m) {
  std::vector<PlanePoint> out;
  for (const auto& a : m.atoms())
    for (std::int64_t k = 0; k < a.multiplicity; ++k) out.push_back({a.birth, a.death});
  return out;
}

PersistenceMeasure to_measure(std::span<const PlanePoint> points, double merge_tol) {
  if (!(merge_tol >= 0.0)) throw DomainError("to_measure: merge_tol must be >= 0");
  const std::size_t n = points.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
    return points[i].birth < points[j].birth ||
           (points[i].birth == points[j].birth && points[i].death < points[j].death);
  });

  UnionFind uf(n);
  for (std::size_t a = 0; a < n; ++a) {
    const auto& p = points[order[a]];
    for (std::size_t b = a + 1; b < n; ++b) {
      const auto& q = points[order[b]];
      if (q.birth - p.birth > merge_tol) break;
      if (linf(p.birth, p.death, q.birth, q.death) <= merge_tol) uf.unite(order[a], order[b]);
    }
  }

  struct Group {
    double sum_b = 0, sum_d = 0;
    PlanePoint first{};
    bool identical = true;
    std::int64_t count = 0;
  };
  std::map<std::size_t, Group> groups;
  for (std::size_t i = 0; i < n; ++i) {
    auto& g = groups[uf.find(i)];
    if (g.count == 0) g.first = points[i];
    else if (!(points[i] == g.first)) g.identical = false;
    g.sum_b += points[i].birth;
    g.sum_d += points[i].death;
    ++g.count;
  }
  std::map<std::pair<double, double>, std::int64_t> merged;
  for (const auto& [root, g] : groups) {
    PlanePoint c = g.first;
    if (!g.identical) {
      c.birth = g.sum_b / static_cast<double>(g.count);
      c.death = g.sum_d / static_cast<double>(g.count);
    }
    merged[{c.birth, c.death}] += g.count;
  }
  std::vector<MeasureAtom> atoms;
  atoms.reserve(merged.size());
  for (const auto& [pt, mult] : merged) atoms.push_back({pt.first, pt.second, mult});
  return PersistenceMeasure(std::move(atoms));
}

PersistenceMeasure to_measure(const AnnotatedDiagram& d, double merge_tol) {
  const auto pts = plane_points(d);
  return to_measure(pts, merge_tol);
}

double separation_delta(const PersistenceMeasure& m) {
  if (m.empty()) throw DomainError("separation_delta: empty support");
  const auto atoms = m.atoms();
  double delta = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < atoms.size(); ++i) {
    delta = std::min(delta, diagonal_distance(atoms[i].birth, atoms[i].death));
    for (std::size_t j = i + 1; j < atoms.size(); ++j)
      delta = std::min(delta, linf(atoms[i].birth, atoms[i].death, atoms[j].birth, atoms[j].death));
  }
  return delta;
}

std::int64_t count_ball(const PersistenceMeasure& m, PlanePoint p, double tau) {
  if (!(tau > 0.0)) throw DomainError("count_ball: tau must be positive");
  std::int64_t total = 0;
  for (const auto& a : m.atoms())
    if (linf(a.birth, a.death, p.birth, p.death) < tau) total += a.multiplicity;
  return total;
}

// --- bottleneck -------------------------------------------------------------------

double bottleneck(std::span<const PlanePoint> a, std::span<const PlanePoint> b) {
  if (a.size() > kBottleneckCapacity || b.size() > kBottleneckCapacity)
    throw CapacityError("bottleneck: more than 500 points in a diagram");
  std::vector<double> cand{0.0};
  for (const auto& p : a) cand.push_back(diagonal_distance(p.birth, p.death));
  for (const auto& q : b) cand.push_back(diagonal_distance(q.birth, q.death));
  for (const auto& p : a)
    for (const auto& q : b) cand.push_back(linf(p.birth, p.death, q.birth, q.death));
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  // Matching everything to the diagonal is always feasible at the largest
  // diagonal candidate, so the last element works.
  std::size_t lo = 0, hi = cand.size() - 1;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (matchable_within(a, b, cand[mid])) hi = mid;
    else lo = mid + 1;
  }
  return cand[lo];
}

double bottleneck(const AnnotatedDiagram& a, const AnnotatedDiagram& b) {
  const auto pa = plane_points(a), pb = plane_points(b);
  return bottleneck(pa, pb);
}

double bottleneck(const PersistenceMeasure& a, const PersistenceMeasure& b) {
  const auto pa = plane_points(a), pb = plane_points(b);
  return bottleneck(pa, pb);
}

// --- realization ------------------------------------------------------------------

std::vector<double> zigzag_knots(std::size_t intervals, bool stretch_first) {
  if (intervals < 1) throw DomainError("zigzag_knots: need at least one interval");
  std::vector<double> knots(intervals + 1);
  const double n = static_cast<double>(intervals);
  const double rest = stretch_first && intervals > 1 ? 1.0 / (n + 0.1) : 1.0 / n;
  const double first = intervals > 1 ? 1.0 - rest * (n - 1.0) : 1.0;
  knots[0] = 0.0;
  for (std::size_t k = 1; k < intervals; ++k) knots[k] = first + rest * static_cast<double>(k - 1);
  knots[intervals] = 1.0;
  return knots;
}

bool is_cyclically_periodic(std::span<const double> values) {
  if (values.size() < 2) return false;
  const std::size_t n = values.size() - 1;
  for (std::size_t p = 1; p < n; ++p) {
    if (n % p != 0) continue;
    bool same = true;
    for (std::size_t i = 0; same && i < n; ++i) same = values[i] == values[(i + p) % n];
    if (same) return true;
  }
  return false;
}

Signal realize_diagram(const PersistenceMeasure& m) {
  std::vector<PlanePoint> pts;
  for (const auto& a : m.atoms()) {
    if (a.death <= a.birth) continue;
    for (std::int64_t k = 0; k < a.multiplicity; ++k) pts.push_back({a.birth, a.death});
  }
  if (pts.empty()) throw PreconditionError("realize_diagram: no off-diagonal mass");
  std::sort(pts.begin(), pts.end(), [](const PlanePoint& p, const PlanePoint& q) {
    return p.birth < q.birth || (p.birth == q.birth && p.death > q.death);
  });

  double top = -std::numeric_limits<double>::infinity();
  std::size_t top_count = 0;
  for (const auto& p : pts) {
    const double pers = p.death - p.birth;
    if (pers > top) {
      top = pers;
      top_count = 1;
    } else if (pers == top) {
      ++top_count;
    }
  }
  if (top_count != 1) throw PreconditionError("realize_diagram: most persistent point is not unique");
  const PlanePoint p0 = pts.front();
  if (p0.death - p0.birth != top)
    throw PreconditionError("realize_diagram: a point lies outside [b0, d0]^2");
  for (const auto& p : pts) {
    if (p.birth < p0.birth || p.death > p0.death)
      throw PreconditionError("realize_diagram: a point lies outside [b0, d0]^2");
  }

  std::vector<double> values;
  values.reserve(2 * pts.size() + 1);
  for (const auto& p : pts) {
    values.push_back(p.death);
    values.push_back(p.birth);
  }
  values.push_back(p0.death);
  auto knots = zigzag_knots(values.size() - 1, is_cyclically_periodic(values));
  return Signal(std::move(knots), std::move(values));
}

PersistenceMeasure divide_measure(const PersistenceMeasure& m, std::int64_t n) {
  if (n < 1) throw DomainError("divide_measure: n must be >= 1");
  std::vector<MeasureAtom> atoms(m.atoms().begin(), m.atoms().end());
  for (auto& a : atoms) {
    if (a.multiplicity % n != 0)
      throw DomainError("divide_measure: " + std::to_string(n) + " does not divide multiplicity " +
                        std::to_string(a.multiplicity));
    a.multiplicity /= n;
  }
  return PersistenceMeasure(std::move(atoms));
}

double total_persistence(const PersistenceMeasure& m) {
  double s = 0.0;
  for (const auto& a : m.atoms()) s += static_cast<double>(a.multiplicity) * (a.death - a.birth) / 2.0;
  return s;
}

}  // namespace periodica

#include "periodica/estimators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "periodica/union_find.hpp"

namespace periodica {

namespace {

struct Edge {
  double w;
  std::size_t u, v;
};

// Weight between node i and j where node n is the diagonal pseudo-node.
double node_distance(std::span<const PersistencePoint> pts, std::size_t i, std::size_t j) {
  const std::size_t n = pts.size();
  if (i == n) return diagonal_distance(pts[j].birth, pts[j].death);
  if (j == n) return diagonal_distance(pts[i].birth, pts[i].death);
  return linf(pts[i].birth, pts[i].death, pts[j].birth, pts[j].death);
}

// Prim on the complete graph over points + pseudo-node.
std::vector<Edge> minimum_spanning_tree(std::span<const PersistencePoint> pts) {
  const std::size_t total = pts.size() + 1;
  std::vector<double> best(total, std::numeric_limits<double>::infinity());
  std::vector<std::size_t> parent(total, 0);
  std::vector<char> in_tree(total, 0);
  std::vector<Edge> edges;
  edges.reserve(total - 1);
  std::size_t current = pts.size();  // start from the diagonal
  in_tree[current] = 1;
  for (std::size_t step = 1; step < total; ++step) {
    std::size_t next = total;
    for (std::size_t k = 0; k < total; ++k) {
      if (in_tree[k]) continue;
      const double w = node_distance(pts, current, k);
      if (w < best[k]) {
        best[k] = w;
        parent[k] = current;
      }
      if (next == total || best[k] < best[next]) next = k;
    }
    in_tree[next] = 1;
    edges.push_back({best[next], parent[next], next});
    current = next;
  }
  return edges;
}

std::int64_t gcd_non_diagonal(UnionFind& uf, std::size_t diag) {
  const std::size_t droot = uf.find(diag);
  std::int64_t g = 0;
  for (std::size_t i = 0; i < diag; ++i) {
    if (uf.find(i) != i || i == droot) continue;
    g = std::gcd(g, static_cast<std::int64_t>(uf.size_of(i)));
  }
  return g == 0 ? 1 : g;
}

}  // namespace

std::int64_t gcd_of(std::span<const std::int64_t> values) {
  std::int64_t g = 0;
  for (std::int64_t v : values) g = std::gcd(g, v);
  return g == 0 ? 1 : g;
}

std::int64_t n_exact(const PersistenceMeasure& m) {
  std::vector<std::int64_t> mult;
  for (const auto& a : m.atoms()) mult.push_back(a.multiplicity);
  return gcd_of(mult);
}

std::int64_t n_hat_ball(const AnnotatedDiagram& d, double tau) {
  if (!(tau > 0.0)) throw DomainError("n_hat_ball: tau must be positive");
  const auto pts = d.points();
  const DiagonalBand band{tau};
  std::int64_t g = 0;
  for (const auto& p : pts) {
    if (band.contains(p.birth, p.death)) continue;
    std::int64_t count = 0;
    for (const auto& q : pts)
      if (linf(p.birth, p.death, q.birth, q.death) < tau) ++count;
    g = std::gcd(g, count);
  }
  return g == 0 ? 1 : g;
}

std::vector<Cluster> single_linkage_partition(const AnnotatedDiagram& d, double tau) {
  if (!(tau > 0.0)) throw DomainError("single_linkage_partition: tau must be positive");
  const auto pts = d.points();
  const std::size_t n = pts.size();
  UnionFind uf(n + 1);
  for (std::size_t i = 0; i < n; ++i) {
    if (node_distance(pts, i, n) < tau) uf.unite(i, n);
    for (std::size_t j = i + 1; j < n; ++j)
      if (node_distance(pts, i, j) < tau) uf.unite(i, j);
  }
  std::vector<Cluster> out;
  std::vector<std::size_t> slot(n + 1, std::numeric_limits<std::size_t>::max());
  const std::size_t droot = uf.find(n);
  slot[droot] = 0;
  out.push_back({{}, true});
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t r = uf.find(i);
    if (slot[r] == std::numeric_limits<std::size_t>::max()) {
      slot[r] = out.size();
      out.push_back({{}, false});
    }
    out[slot[r]].members.push_back(i);
  }
  return out;
}

std::int64_t n_hat_cluster(const AnnotatedDiagram& d, double tau) {
  std::int64_t g = 0;
  for (const auto& c : single_linkage_partition(d, tau))
    if (!c.diagonal) g = std::gcd(g, static_cast<std::int64_t>(c.members.size()));
  return g == 0 ? 1 : g;
}

std::int64_t ClusterScan::at(double tau) const {
  if (!(tau > 0.0)) throw DomainError("ClusterScan::at: tau must be positive");
  // Interval i is (breakpoints[i], breakpoints[i+1]].
  auto it = std::lower_bound(breakpoints.begin(), breakpoints.end(), tau);
  const auto i = static_cast<std::size_t>(it - breakpoints.begin());
  return values[i - 1];
}

ClusterScan scan_h(const AnnotatedDiagram& d) {
  if (d.empty()) throw DomainError("scan_h: empty diagram");
  const auto pts = d.points();
  const std::size_t n = pts.size();
  auto edges = minimum_spanning_tree(pts);
  std::sort(edges.begin(), edges.end(), [](const Edge& a, const Edge& b) { return a.w < b.w; });

  ClusterScan scan;
  scan.domain_max = d.half_range();
  UnionFind uf(n + 1);
  std::size_t k = 0;
  while (k < edges.size() && edges[k].w <= 0.0) {
    uf.unite(edges[k].u, edges[k].v);
    ++k;
  }
  scan.breakpoints.push_back(0.0);
  scan.values.push_back(gcd_non_diagonal(uf, n));
  while (k < edges.size()) {
    const double w = edges[k].w;
    for (; k < edges.size() && edges[k].w == w; ++k) uf.unite(edges[k].u, edges[k].v);
    const std::int64_t h = gcd_non_diagonal(uf, n);
    if (h == scan.values.back()) continue;
    scan.breakpoints.push_back(w);
    scan.values.push_back(h);
  }
  return scan;
}

std::string to_string(EstimatorMethod m) {
  switch (m) {
    case EstimatorMethod::exact: return "exact";
    case EstimatorMethod::ball: return "ball";
    case EstimatorMethod::cluster: return "cluster";
    case EstimatorMethod::cluster_auto: return "cluster_auto";
    case EstimatorMethod::zero_crossings: return "zero_crossings";
  }
  return "unknown";
}

EstimatorReport n_hat_auto(const ClusterScan& scan) {
  EstimatorReport best{1, EstimatorMethod::cluster_auto, std::nullopt, std::nullopt};
  double best_len = -1.0;
  for (std::size_t i = 0; i < scan.values.size(); ++i) {
    const std::int64_t n = scan.values[i];
    if (n <= 1) continue;
    const double lo = scan.breakpoints[i];
    double hi = i + 1 < scan.breakpoints.size() ? scan.breakpoints[i + 1]
                                                 : std::numeric_limits<double>::infinity();
    hi = std::min(hi, scan.domain_max);
    if (!(hi > lo)) continue;
    const double len = hi - lo;
    if (len > best_len || (len == best_len && n > best.n_hat)) {
      best_len = len;
      best.n_hat = n;
      best.longest_interval = std::pair{lo, hi};
      best.tau_used = 0.5 * (lo + hi);
    }
  }
  return best;
}

EstimatorReport n_hat_auto(const AnnotatedDiagram& d) { return n_hat_auto(scan_h(d)); }

std::int64_t count_zero_crossings(std::span<const double> values) {
  std::int64_t count = 0;
  int sign = 0;
  for (double v : values) {
    const int s = v > 0 ? 1 : (v < 0 ? -1 : 0);
    if (s == 0) continue;
    if (sign != 0 && s != sign) ++count;
    sign = s;
  }
  return count;
}

std::int64_t zero_crossings_estimate(const Signal& s, std::int64_t crossings_per_period) {
  if (crossings_per_period < 2 || crossings_per_period % 2 != 0)
    throw DomainError("zero_crossings_estimate: crossings per period must be even and >= 2");
  const auto count = count_zero_crossings(s.values());
  const auto n = static_cast<std::int64_t>(
      std::llround(static_cast<double>(count) / static_cast<double>(crossings_per_period)));
  return std::max<std::int64_t>(1, n);
}

}  // namespace periodica

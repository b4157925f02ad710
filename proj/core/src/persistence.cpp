#include "periodica/persistence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <unordered_map>

#include "periodica/union_find.hpp"

namespace periodica {

AnnotatedDiagram::AnnotatedDiagram(std::vector<PersistencePoint> points, DomainKind kind,
                                   std::size_t essential_index)
    : points_(std::move(points)), kind_(kind), essential_index_(essential_index) {}

const PersistencePoint& AnnotatedDiagram::essential() const {
  for (const auto& p : points_)
    if (p.birth_index == essential_index_) return p;
  throw DomainError("AnnotatedDiagram: no essential point");
}

double AnnotatedDiagram::half_range() const { return essential().persistence() / 2.0; }

namespace {

// A run-length collapsed sequence: one vertex per maximal run of equal values,
// represented by the run's first original index.
struct Collapsed {
  std::vector<double> value;
  std::vector<std::size_t> index;
};

Collapsed collapse_plateaus(std::span<const double> values, std::span<const std::size_t> original) {
  Collapsed c;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0 && values[i] == values[i - 1]) continue;
    c.value.push_back(values[i]);
    c.index.push_back(original[i]);
  }
  return c;
}

AnnotatedDiagram sweep(const Collapsed& c, bool cyclic, DomainKind kind) {
  const std::size_t n = c.value.size();
  auto before = [&](std::size_t a, std::size_t b) {
    return c.value[a] < c.value[b] || (c.value[a] == c.value[b] && c.index[a] < c.index[b]);
  };
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), before);

  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  UnionFind uf(n);
  std::vector<char> seen(n, 0);
  std::vector<std::size_t> oldest(n, kNone);  // per root: vertex of the component minimum
  std::vector<std::size_t> birth_vertex;
  std::vector<double> death(n, std::numeric_limits<double>::quiet_NaN());

  for (std::size_t v : order) {
    std::size_t nb[2] = {kNone, kNone};
    std::size_t count = 0;
    auto consider = [&](std::size_t u) {
      if (u == v || !seen[u]) return;
      if (count == 1 && nb[0] == u) return;
      nb[count++] = u;
    };
    if (v > 0) consider(v - 1);
    else if (cyclic) consider(n - 1);
    if (v + 1 < n) consider(v + 1);
    else if (cyclic) consider(0);

    seen[v] = 1;
    if (count == 0) {
      oldest[v] = v;
      birth_vertex.push_back(v);
      continue;
    }
    std::size_t ra = uf.find(nb[0]);
    if (count == 2) {
      const std::size_t rb = uf.find(nb[1]);
      if (ra != rb) {
        std::size_t older = oldest[ra], younger = oldest[rb];
        if (before(younger, older)) std::swap(older, younger);
        death[younger] = c.value[v];
        ra = uf.unite(ra, rb);
        oldest[ra] = older;
      }
    }
    const std::size_t root = uf.unite(ra, v);
    oldest[root] = oldest[ra];
  }

  const double top = c.value[order.back()];
  const std::size_t essential_vertex = oldest[uf.find(order.front())];
  std::vector<PersistencePoint> points;
  points.reserve(birth_vertex.size());
  for (std::size_t v : birth_vertex) {
    const double d = v == essential_vertex ? top : death[v];
    points.push_back({c.value[v], d, c.index[v]});
  }
  std::sort(points.begin(), points.end(),
            [](const auto& a, const auto& b) { return a.birth_index < b.birth_index; });
  return AnnotatedDiagram(std::move(points), kind, c.index[essential_vertex]);
}

void require_finite(std::span<const double> values, const char* who) {
  if (values.size() < 2) throw DomainError(std::string(who) + ": need at least 2 samples");
  for (double v : values)
    if (!std::isfinite(v)) throw DomainError(std::string(who) + ": non-finite sample");
}

}  // namespace

AnnotatedDiagram diagram_interval(std::span<const double> values) {
  require_finite(values, "diagram_interval");
  std::vector<std::size_t> idx(values.size());
  std::iota(idx.begin(), idx.end(), std::size_t{0});
  return sweep(collapse_plateaus(values, idx), false, DomainKind::interval);
}

AnnotatedDiagram diagram_interval(const Signal& s) { return diagram_interval(s.values()); }

AnnotatedDiagram diagram_circle(std::span<const double> values) {
  require_finite(values, "diagram_circle");
  if (std::abs(values.front() - values.back()) > 1e-9)
    throw PreconditionError("diagram_circle: first and last samples differ");

  // Drop the duplicated endpoint and rotate so that the run holding the global
  // minimum starts at position 0; then no plateau wraps around.
  const std::size_t n = values.size() - 1;
  std::size_t gmin = 0;
  for (std::size_t i = 1; i < n; ++i)
    if (values[i] < values[gmin]) gmin = i;
  std::size_t start = gmin;
  for (std::size_t steps = 0; steps < n; ++steps) {
    const std::size_t prev = (start + n - 1) % n;
    if (values[prev] != values[gmin]) break;
    start = prev;
  }
  std::vector<double> rotated(n);
  std::vector<std::size_t> original(n);
  for (std::size_t k = 0; k < n; ++k) {
    original[k] = (start + k) % n;
    rotated[k] = values[original[k]];
  }
  Collapsed c = collapse_plateaus(rotated, original);
  // The cyclic tie-break uses original indices; a constant signal has one run.
  return sweep(c, c.value.size() > 1, DomainKind::circle);
}

AnnotatedDiagram diagram_circle(const Signal& s) { return diagram_circle(s.values()); }

AnnotatedDiagram brute_force_diagram(std::span<const double> values) {
  require_finite(values, "brute_force_diagram");
  if (values.size() > 10000) throw CapacityError("brute_force_diagram: more than 10^4 samples");
  const std::size_t n = values.size();

  std::vector<double> levels(values.begin(), values.end());
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());

  auto lex_less = [&](std::size_t a, std::size_t b) {
    return values[a] < values[b] || (values[a] == values[b] && a < b);
  };

  // alive: representative -> still the minimum of its component
  std::unordered_map<std::size_t, bool> alive;
  std::unordered_map<std::size_t, double> death;
  std::vector<std::size_t> reps;
  for (double r : levels) {
    reps.clear();
    std::size_t i = 0;
    while (i < n) {
      if (values[i] > r) {
        ++i;
        continue;
      }
      std::size_t best = i;
      std::size_t j = i;
      while (j < n && values[j] <= r) {
        if (lex_less(j, best)) best = j;
        ++j;
      }
      reps.push_back(best);
      i = j;
    }
    for (auto& [rep, is_alive] : alive) {
      if (!is_alive) continue;
      if (std::find(reps.begin(), reps.end(), rep) == reps.end()) {
        is_alive = false;
        death[rep] = r;
      }
    }
    for (std::size_t rep : reps)
      if (!alive.contains(rep)) alive[rep] = true;
  }

  const double top = levels.back();
  std::vector<PersistencePoint> points;
  std::size_t essential = 0;
  for (const auto& [rep, is_alive] : alive) {
    if (is_alive) essential = rep;
    points.push_back({values[rep], is_alive ? top : death[rep], rep});
  }
  std::sort(points.begin(), points.end(),
            [](const auto& a, const auto& b) { return a.birth_index < b.birth_index; });
  return AnnotatedDiagram(std::move(points), DomainKind::interval, essential);
}

}  // namespace periodica

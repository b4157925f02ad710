#include <algorithm>
#include <charconv>
#include <numbers>

#include "periodica/signal.hpp"

namespace periodica {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// Golden-section search for a local minimum of g on [a, b].
double golden_min(const std::function<double(double)>& g, double a, double b) {
  const double r = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - r * (b - a), d = a + r * (b - a);
  double gc = g(c), gd = g(d);
  for (int i = 0; i < 200 && b - a > 1e-15; ++i) {
    if (gc < gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - r * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + r * (b - a);
      gd = g(d);
    }
  }
  return g(0.5 * (a + b));
}

// Global minimum of a 1-periodic function: dense scan, then refinement.
double periodic_min(const std::function<double(double)>& g) {
  constexpr int kGrid = 20000;
  int best = 0;
  double best_v = g(0.0);
  for (int i = 1; i < kGrid; ++i) {
    const double v = g(static_cast<double>(i) / kGrid);
    if (v < best_v) {
      best_v = v;
      best = i;
    }
  }
  const double x = static_cast<double>(best) / kGrid;
  return std::min(best_v, golden_min(g, x - 1.0 / kGrid, x + 1.0 / kGrid));
}

// sum_k a_k sin(2 pi k x), affinely rescaled to range [-1, 1].
PeriodicTemplate fourier_sine_template(std::string id, std::vector<double> coeffs) {
  auto raw = [coeffs](double x, int order) {
    double acc = 0.0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      const double w = kTwoPi * static_cast<double>(i + 1);
      const double a = coeffs[i];
      switch (order) {
        case 0: acc += a * std::sin(w * x); break;
        case 1: acc += a * w * std::cos(w * x); break;
        case 2: acc += -a * w * w * std::sin(w * x); break;
        default: acc += -a * w * w * w * std::cos(w * x); break;
      }
    }
    return acc;
  };
  const double lo = periodic_min([&](double x) { return raw(x, 0); });
  const double hi = -periodic_min([&](double x) { return -raw(x, 0); });
  const double center = 0.5 * (hi + lo);
  const double scale = 0.5 * (hi - lo);
  auto value = [=](double x) { return std::clamp((raw(x, 0) - center) / scale, -1.0, 1.0); };
  std::array<PeriodicTemplate::Fn, 3> d{
      [=](double x) { return raw(x, 1) / scale; },
      [=](double x) { return raw(x, 2) / scale; },
      [=](double x) { return raw(x, 3) / scale; },
  };
  return PeriodicTemplate(std::move(id), value, d);
}

// sin(theta(x)) with theta(x) = 2 pi x + b sin(2 pi x): one extremum pair,
// asymmetric rise and fall.
PeriodicTemplate warped_sine_template(std::string id, double b) {
  auto theta = [b](double x, int order) {
    switch (order) {
      case 0: return kTwoPi * x + b * std::sin(kTwoPi * x);
      case 1: return kTwoPi * (1.0 + b * std::cos(kTwoPi * x));
      case 2: return -b * kTwoPi * kTwoPi * std::sin(kTwoPi * x);
      default: return -b * kTwoPi * kTwoPi * kTwoPi * std::cos(kTwoPi * x);
    }
  };
  std::array<PeriodicTemplate::Fn, 3> d{
      [=](double x) { return std::cos(theta(x, 0)) * theta(x, 1); },
      [=](double x) {
        const double t1 = theta(x, 1);
        return -std::sin(theta(x, 0)) * t1 * t1 + std::cos(theta(x, 0)) * theta(x, 2);
      },
      [=](double x) {
        const double t0 = theta(x, 0), t1 = theta(x, 1), t2 = theta(x, 2), t3 = theta(x, 3);
        return -std::cos(t0) * t1 * t1 * t1 - 3.0 * std::sin(t0) * t1 * t2 + std::cos(t0) * t3;
      },
  };
  return PeriodicTemplate(std::move(id), [=](double x) { return std::sin(theta(x, 0)); }, d);
}

// exp(k cos(2 pi x)) rescaled to [-1, 1]: a narrow bump once per period.
PeriodicTemplate pulse_template(std::string id, double k) {
  const double floor_v = std::exp(-2.0 * k);
  auto value = [=](double x) {
    const double e = std::exp(k * (std::cos(kTwoPi * x) - 1.0));
    return 2.0 * (e - floor_v) / (1.0 - floor_v) - 1.0;
  };
  return PeriodicTemplate(std::move(id), value);
}

}  // namespace

std::vector<std::string> builtin_template_ids() { return {"f0", "f1", "f2", "f3", "f4"}; }

PeriodicTemplate degenerate_family(double r) {
  if (!(r >= 0.0)) throw DomainError("degenerate_family: r must be >= 0");
  auto value = [r](double x) {
    const double s = std::sin(2.0 * kTwoPi * x);
    return x <= 0.5 ? s : (1.0 + r) * s;
  };
  return PeriodicTemplate("fr:" + std::to_string(r), value);
}

PeriodicTemplate builtin_template(std::string_view id) {
  if (id == "f0") {
    std::array<PeriodicTemplate::Fn, 3> d{
        [](double x) { return kTwoPi * std::cos(kTwoPi * x); },
        [](double x) { return -kTwoPi * kTwoPi * std::sin(kTwoPi * x); },
        [](double x) { return -kTwoPi * kTwoPi * kTwoPi * std::cos(kTwoPi * x); },
    };
    return PeriodicTemplate("f0", [](double x) { return std::sin(kTwoPi * x); }, d);
  }
  if (id == "f1") return fourier_sine_template("f1", {1.0, 1.0});
  if (id == "f2") return fourier_sine_template("f2", {1.0, 0.45, 0.6});
  if (id == "f3") return warped_sine_template("f3", 0.8);
  if (id == "f4") return pulse_template("f4", 4.0);
  if (id.starts_with("fr:")) {
    const auto text = id.substr(3);
    double r = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), r);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
      throw DomainError("builtin_template: bad r in '" + std::string(id) + "'");
    return degenerate_family(r);
  }
  throw DomainError("builtin_template: unknown template '" + std::string(id) + "'");
}

PeriodicTemplate piecewise_linear_template(std::vector<double> values, std::string id) {
  if (values.size() < 2) throw DomainError("piecewise_linear_template: need >= 2 values");
  if (values.front() != values.back())
    throw DomainError("piecewise_linear_template: first and last value must agree");
  const auto m = static_cast<double>(values.size() - 1);
  auto value = [values = std::move(values), m](double x) {
    double pos = x * m;
    if (const double k = std::round(pos); std::abs(pos - k) < 1e-12 * m) pos = k;
    auto i = static_cast<std::size_t>(std::floor(pos));
    if (i >= values.size() - 1) return values.back();
    const double w = pos - static_cast<double>(i);
    if (w == 0.0) return values[i];
    return values[i] + w * (values[i + 1] - values[i]);
  };
  return PeriodicTemplate(std::move(id), std::move(value));
}

}  // namespace periodica

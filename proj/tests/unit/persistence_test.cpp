#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "oracles.hpp"
#include "periodica/periodica.hpp"

using namespace periodica;
using oracle::Pairs;

namespace {

std::vector<double> repeat_period(const std::vector<double>& one, int n) {
  std::vector<double> out{one.front()};
  for (int k = 0; k < n; ++k) out.insert(out.end(), one.begin() + 1, one.end());
  return out;
}

}  // namespace

TEST(DiagramInterval, MonotoneRamp) {
  const auto d = diagram_interval(std::vector<double>{0, 1});
  ASSERT_EQ(d.size(), 1u);
  EXPECT_EQ(d.points()[0], (PersistencePoint{0, 1, 0}));
  EXPECT_EQ(d.essential_index(), 0u);
}

TEST(DiagramInterval, HandTrace) {
  const auto d = diagram_interval(std::vector<double>{1, 0, 2, 0.5, 3});
  EXPECT_EQ(oracle::sorted_pairs(d), (Pairs{{0, 3}, {0.5, 2}}));
  EXPECT_EQ(d.essential().birth_index, 1u);
  EXPECT_EQ(d.domain_kind(), DomainKind::interval);
}

TEST(DiagramInterval, DecreasingRampEndpointMinimum) {
  const auto d = diagram_interval(std::vector<double>{3, 2, 1});
  EXPECT_EQ(oracle::sorted_pairs(d), (Pairs{{1, 3}}));
  EXPECT_EQ(d.essential_index(), 2u);
}

TEST(DiagramInterval, PlateausCollapseToFirstIndex) {
  const auto d = diagram_interval(std::vector<double>{2, 0, 0, 0, 3, 1, 1, 4});
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d.points()[0], (PersistencePoint{0, 4, 1}));
  EXPECT_EQ(d.points()[1], (PersistencePoint{1, 3, 5}));
}

TEST(DiagramInterval, TiesBreakByIndex) {
  const auto d = diagram_interval(std::vector<double>{0, 2, 0});
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(d.essential_index(), 0u);
  EXPECT_EQ(d.points()[1], (PersistencePoint{0, 2, 2}));
}

TEST(DiagramInterval, ConstantSignal) {
  const auto d = diagram_interval(std::vector<double>{1, 1, 1});
  EXPECT_EQ(oracle::sorted_pairs(d), (Pairs{{1, 1}}));
}

TEST(DiagramInterval, Preconditions) {
  EXPECT_THROW(diagram_interval(std::vector<double>{1}), DomainError);
  EXPECT_THROW(diagram_interval(std::vector<double>{1, std::numeric_limits<double>::infinity()}), DomainError);
}

TEST(DiagramInterval, DegenerateFamilyIncludesEndpointMinimum) {
  // On [0,1] the endpoint value 0 is a local minimum of the restriction, so
  // the interval diagram has a third point besides the two circle points.
  const auto f = degenerate_family(0.5);
  const auto s = sample_one_period(f, 2000);
  const auto d = diagram_interval(s);
  const auto pairs = oracle::sorted_pairs(d);
  ASSERT_EQ(pairs.size(), 3u);
  EXPECT_NEAR(pairs[0].first, -1.5, 0.01);
  EXPECT_NEAR(pairs[0].second, 1.5, 0.01);
  EXPECT_NEAR(pairs[1].first, -1.0, 0.01);
  EXPECT_NEAR(pairs[1].second, 1.5, 0.01);
  EXPECT_NEAR(pairs[2].first, 0.0, 0.01);
  EXPECT_NEAR(pairs[2].second, 1.0, 0.01);
}

TEST(DiagramCircle, DegenerateFamilyTwoPoints) {
  const auto f = degenerate_family(0.5);
  const auto d = diagram_circle(sample_one_period(f, 2000));
  const auto pairs = oracle::sorted_pairs(d);
  ASSERT_EQ(pairs.size(), 2u);
  EXPECT_NEAR(pairs[0].first, -1.5, 0.01);
  EXPECT_NEAR(pairs[0].second, 1.5, 0.01);
  EXPECT_NEAR(pairs[1].first, -1.0, 0.01);
  EXPECT_NEAR(pairs[1].second, 1.0, 0.01);
}

TEST(DiagramCircle, OneSinePeriod) {
  const auto d = diagram_circle(sample_one_period(builtin_template("f0"), 1000));
  ASSERT_EQ(d.size(), 1u);
  EXPECT_NEAR(d.points()[0].birth, -1.0, 1e-9);
  EXPECT_NEAR(d.points()[0].death, 1.0, 1e-9);
  EXPECT_EQ(d.domain_kind(), DomainKind::circle);
}

TEST(DiagramCircle, FourSinePeriods) {
  const auto d = diagram_circle(sample_phase_aligned(builtin_template("f0"), Reparam::linear(4), 200));
  ASSERT_EQ(d.size(), 4u);
  for (const auto& p : d.points()) {
    EXPECT_NEAR(p.birth, -1.0, 1e-9);
    EXPECT_NEAR(p.death, 1.0, 1e-9);
  }
}

TEST(DiagramCircle, HalfPeriodicDegenerateFunction) {
  const auto d = diagram_circle(sample_one_period(degenerate_family(0.0), 1000));
  const auto pairs = oracle::sorted_pairs(d);
  ASSERT_EQ(pairs.size(), 2u);
  EXPECT_NEAR(pairs[0].first, pairs[1].first, 1e-12);
  EXPECT_NEAR(pairs[0].second, pairs[1].second, 1e-12);
  EXPECT_NEAR(pairs[0].first, -1.0, 1e-9);
}

TEST(DiagramCircle, WrapsAroundAndRotates) {
  // Minimum plateau straddling the seam.
  const auto d = diagram_circle(std::vector<double>{0, 2, 1, 3, 0, 0});
  ASSERT_EQ(d.size(), 2u);
  EXPECT_EQ(oracle::sorted_pairs(d), (Pairs{{0, 3}, {1, 2}}));
  EXPECT_EQ(d.essential_index(), 4u);
}

TEST(DiagramCircle, EndpointMismatch) {
  EXPECT_THROW(diagram_circle(std::vector<double>{0, 1, 0.5}), PreconditionError);
  EXPECT_NO_THROW(diagram_circle(std::vector<double>{0, 1, 1e-10}));
}

TEST(BruteForce, Examples) {
  EXPECT_EQ(oracle::sorted_pairs(brute_force_diagram(std::vector<double>{0, 1})), (Pairs{{0, 1}}));
  EXPECT_EQ(oracle::sorted_pairs(brute_force_diagram(std::vector<double>{1, 0, 2, 0.5, 3})),
            (Pairs{{0, 3}, {0.5, 2}}));
  EXPECT_THROW(brute_force_diagram(std::vector<double>(10001, 0.0)), CapacityError);
}

TEST(BruteForce, AgreesWithSweepOnRandomSignals) {
  std::mt19937_64 rng(2024);
  for (int trial = 0; trial < 1000; ++trial) {
    const auto v = oracle::random_signal(rng, 50, trial % 2 ? 4 : 1000);
    const auto fast = diagram_interval(v);
    const auto slow = brute_force_diagram(v);
    ASSERT_EQ(oracle::sorted_pairs(fast), oracle::sorted_pairs(slow)) << "trial " << trial;
    ASSERT_EQ(fast.essential_index(), slow.essential_index());
  }
}

TEST(DiagramInvariants, CountsAndBounds) {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 300; ++trial) {
    const auto v = oracle::random_signal(rng, 60, 6);
    const auto d = diagram_interval(v);
    EXPECT_EQ(d.size(), oracle::local_minima(v).size());
    const double lo = *std::min_element(v.begin(), v.end());
    const double hi = *std::max_element(v.begin(), v.end());
    int essential = 0;
    for (const auto& p : d.points()) {
      EXPECT_GE(p.death, p.birth);
      EXPECT_GE(p.birth, lo);
      EXPECT_LE(p.death, hi);
      EXPECT_EQ(p.birth, v[p.birth_index]);
      if (p.birth == lo && p.death == hi && p.birth_index == d.essential_index()) ++essential;
    }
    EXPECT_EQ(essential, 1);
  }
}

TEST(DiagramInvariants, CircleHomogeneityOnRandomTemplates) {
  std::mt19937_64 rng(99);
  for (int trial = 0; trial < 60; ++trial) {
    const int pairs = 1 + trial % 6;
    const auto one = oracle::random_pl_period(rng, pairs, 3 + trial % 4);
    const auto base = oracle::sorted_pairs(diagram_circle(one));
    for (int n = 1; n <= 10; ++n) {
      Pairs expected;
      for (int k = 0; k < n; ++k) expected.insert(expected.end(), base.begin(), base.end());
      std::sort(expected.begin(), expected.end());
      ASSERT_EQ(oracle::sorted_pairs(diagram_circle(repeat_period(one, n))), expected);
    }
  }
}

TEST(DiagramInvariants, ReparametrizationInvariance) {
  // f o gamma sampled at gamma^{-1} of a grid has exactly the values of f_N
  // sampled on that grid.
  const auto f = builtin_template("f1");
  const auto gamma = random_reparam(5, 31);
  const auto composed = sample_phase_aligned(f, gamma, 64);
  const auto straight = sample_phase_aligned(f, Reparam::linear(5), 64);
  EXPECT_EQ(oracle::sorted_pairs(diagram_circle(composed)), oracle::sorted_pairs(diagram_circle(straight)));
  EXPECT_EQ(oracle::sorted_pairs(diagram_interval(composed)), oracle::sorted_pairs(diagram_interval(straight)));
}

TEST(DiagramInvariants, StabilityUnderPerturbation) {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> u(-1, 1);
  for (int trial = 0; trial < 100; ++trial) {
    const auto v = oracle::random_signal(rng, 40, 1000);
    const double amp = 0.3 * std::abs(u(rng));
    std::vector<double> w(v.size());
    double sup = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      w[i] = v[i] + amp * u(rng);
      sup = std::max(sup, std::abs(w[i] - v[i]));
    }
    EXPECT_LE(bottleneck(diagram_interval(v), diagram_interval(w)), sup + 1e-9);
  }
}

TEST(DiagramInvariants, MinMaxMin) {
  std::mt19937_64 rng(123);
  for (int trial = 0; trial < 200; ++trial) {
    const auto v = oracle::random_signal(rng, 60, 1000);
    const auto d = diagram_interval(v);
    if (d.size() < 2) continue;
    const double delta = separation_delta(to_measure(d));
    const auto minima = oracle::local_minima(v);
    for (std::size_t k = 1; k < minima.size(); ++k) {
      double peak = -1e300;
      for (std::size_t c = minima[k - 1]; c <= minima[k]; ++c) peak = std::max(peak, v[c]);
      EXPECT_GE(peak, std::max(v[minima[k - 1]], v[minima[k]]) + 2 * delta - 1e-9);
    }
  }
}

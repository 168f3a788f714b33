#include "lipdist/constructions.hpp"
#include "lipdist/experiments.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <random>
#include <set>

namespace lipdist {
namespace {

SignVector iv(const char* s) { return SignVector::parse(Family::interval, s); }
SignVector pv(const char* s) { return SignVector::parse(Family::pulse, s); }

std::vector<double> xs_of(const FiniteMetricSpace& s) {
  // Interval spaces start at the origin, so the first row holds the abscissae.
  std::vector<double> out;
  for (int i = 0; i < s.size(); ++i) out.push_back(s.distance(0, i));
  return out;
}

TEST(SignVector, ParsesAndRejectsWithPosition) {
  EXPECT_EQ(iv("121").entries(), (std::vector<int>{1, 2, 1}));
  EXPECT_EQ(pv("0101").str(), "0101");
  try {
    iv("13");
    FAIL() << "expected SignVectorError";
  } catch (const SignVectorError& e) {
    EXPECT_EQ(e.position(), 2u);
  }
  EXPECT_THROW(pv("012"), SignVectorError);
  EXPECT_THROW(iv(""), SignVectorError);
  EXPECT_THROW(SignVector(Family::pulse, {0, 2}), SignVectorError);
}

TEST(SignVector, EnumerationIsLexicographic) {
  const auto all = SignVector::enumerate(Family::interval, 3);
  ASSERT_EQ(all.size(), 8u);
  EXPECT_EQ(all.front().str(), "111");
  EXPECT_EQ(all.back().str(), "222");
  EXPECT_TRUE(std::is_sorted(all.begin(), all.end()));
}

TEST(DiscretizationParams, Validation) {
  EXPECT_THROW((DiscretizationParams{0, 2, 1.0}.validate()), std::invalid_argument);
  EXPECT_THROW((DiscretizationParams{1, 1, 1.0}.validate()), std::invalid_argument);
  EXPECT_THROW((DiscretizationParams{1, 2, 0.0}.validate()), std::invalid_argument);
  EXPECT_THROW((DiscretizationParams{1, 2, 1.5}.validate()), std::invalid_argument);
  EXPECT_NO_THROW((DiscretizationParams{1, 2, 1.0}.validate()));
}

TEST(IntervalSpace, SingleBlocks) {
  EXPECT_EQ(xs_of(interval_space(iv("1"), {1, 2, 1.0})), (std::vector<double>{0, 0.5, 0.75}));
  EXPECT_EQ(xs_of(interval_space(iv("2"), {1, 2, 1.0})), (std::vector<double>{0, 0.5, 0.625}));
}

TEST(IntervalSpace, TwoBlocks) {
  const auto s = interval_space(iv("11"), {2, 2, 1.0});
  EXPECT_EQ(xs_of(s), (std::vector<double>{0, 0.25, 0.375, 0.5, 0.75}));
  EXPECT_EQ(s.labels().front(), "origin");
  EXPECT_EQ(s.index_of("b1.s1"), 4);
  EXPECT_TRUE(validate_metric(s).empty());
}

TEST(IntervalSpace, PointCountAndRefinement) {
  for (int n = 1; n <= 5; ++n) {
    for (int k = 2; k <= 5; ++k) {
      std::vector<int> e(static_cast<std::size_t>(n), 1);
      EXPECT_EQ(interval_space(SignVector(Family::interval, e), {n, k, 1.0}).size(), 1 + n * k);
    }
  }
  // k = 3 refines k = 2; k = 4 does not refine k = 3.
  EXPECT_TRUE(is_nested_refinement(2, 3));
  EXPECT_TRUE(is_nested_refinement(3, 5));
  EXPECT_FALSE(is_nested_refinement(3, 4));
  const auto coarse = interval_points(iv("121"), {3, 3, 1.0});
  const auto fine = interval_points(iv("121"), {3, 5, 1.0});
  const std::set<double> fine_set(fine.begin(), fine.end());
  for (double x : coarse) EXPECT_TRUE(fine_set.count(x)) << x;
}

TEST(IntervalSpace, LengthMismatchAndWrongFamily) {
  EXPECT_THROW(interval_space(iv("12"), {3, 2, 1.0}), std::invalid_argument);
  EXPECT_THROW(interval_space(pv("01"), {2, 2, 1.0}), std::invalid_argument);
}

TEST(CanonicalIntervalMap, IdentityWhenEqual) {
  const auto f = canonical_interval_map(iv("121"), iv("121"), {3, 3, 1.0});
  EXPECT_EQ(lipschitz_cost(f).cost, 0.0);
}

TEST(CanonicalIntervalMap, OnesToTwos) {
  const auto f = canonical_interval_map(iv("11"), iv("22"), {2, 2, 1.0});
  EXPECT_EQ(xs_of(f.target()), (std::vector<double>{0, 0.25, 0.3125, 0.5, 0.625}));
  const auto r = lipschitz_cost(f);
  EXPECT_EQ(r.dil_forward, 1.5);
  EXPECT_EQ(r.dil_inverse, 2.0);
  EXPECT_NEAR(r.cost, 1.0986122886681098, 1e-15);
}

TEST(CanonicalIntervalMap, MatchesAffineFormula) {
  // Sample images agree with 2^(u_n - v_n) (x - 2^-n) + 2^-n.
  const auto u = iv("1212");
  const auto v = iv("2112");
  const DiscretizationParams p{4, 4, 1.0};
  const auto xu = interval_points(u, p);
  const auto xv = interval_points(v, p);
  int idx = 1;
  for (int n = 4; n >= 1; --n) {
    for (int j = 0; j < 4; ++j, ++idx) {
      const double x = xu[static_cast<std::size_t>(idx)];
      const double left = std::ldexp(1.0, -n);
      const double image = std::ldexp(1.0, u.block(n) - v.block(n)) * (x - left) + left;
      EXPECT_DOUBLE_EQ(image, xv[static_cast<std::size_t>(idx)]);
    }
  }
  EXPECT_THROW(canonical_interval_map(iv("12"), iv("121"), {2, 2, 1.0}), std::invalid_argument);
}

TEST(CanonicalIntervalMap, CostWithinTwoLogTwoOnRandomPairs) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<int> a(5), b(5);
    for (auto& x : a) x = 1 + static_cast<int>(rng() & 1u);
    for (auto& x : b) x = 1 + static_cast<int>(rng() & 1u);
    const auto f = canonical_interval_map(SignVector(Family::interval, a), SignVector(Family::interval, b), {5, 3, 1.0});
    EXPECT_LE(lipschitz_cost(f).cost, 2.0 * std::log(2.0) + 1e-9);
  }
}

TEST(PulseHeight, FlatBlocksAreZero) {
  const auto u = pv("010");
  for (double x : {0.6, 0.75, 1.0, 0.125, 0.2}) EXPECT_EQ(pulse_height(u, x, 1.0), 0.0) << x;
  EXPECT_EQ(pulse_height(u, 0.0, 1.0), 0.0);
}

TEST(PulseHeight, PeakAndEdges) {
  const auto u = pv("111");
  for (int n = 1; n <= 3; ++n) {
    const auto b = block_breakpoints(n);
    EXPECT_EQ(pulse_height(u, b.peak, 1.0), std::ldexp(1.0, -(n + 2)));
    EXPECT_EQ(pulse_height(u, b.left, 1.0), 0.0);
    EXPECT_EQ(pulse_height(u, b.left, 0.3), 0.0);
    EXPECT_EQ(pulse_height(u, b.foot, 1.0), 0.0);
    EXPECT_EQ(pulse_height(u, b.peak, 0.5), 0.5 * std::ldexp(1.0, -(n + 2)));
  }
}

TEST(PulseHeight, ContinuousAcrossBreakpoints) {
  const auto u = pv("1101");
  for (int n = 1; n <= 4; ++n) {
    const auto b = block_breakpoints(n);
    for (double x : {b.left, b.peak, b.foot}) {
      for (double eps : {1.0, 0.5, 0.125}) {
        const double h = 1e-14;
        if (n < 4 || x != b.left) EXPECT_NEAR(pulse_height(u, x - h, eps), pulse_height(u, x + h, eps), 1e-12);
        EXPECT_NEAR(pulse_height(u, x, eps), pulse_height(u, x + h, eps), 1e-12);
      }
    }
  }
}

TEST(PulseHeight, OutsideRetainedBlocksIsError) {
  const auto u = pv("11");
  EXPECT_THROW(pulse_height(u, 0.2, 1.0), std::invalid_argument);
  EXPECT_THROW(pulse_height(u, 1.5, 1.0), std::invalid_argument);
  EXPECT_THROW(pulse_height(u, -0.1, 1.0), std::invalid_argument);
  EXPECT_NO_THROW(pulse_height(u, 0.25, 1.0));
}

TEST(PulseSpace, AllFlatIsASegmentSampling) {
  const auto y = pulse_space(pv("000"), {3, 2, 1.0});
  ASSERT_TRUE(y.coords().has_value());
  for (int i = 0; i < y.size(); ++i) EXPECT_EQ((*y.coords())(i, 1), 0.0);
  EXPECT_EQ((*y.coords())(y.size() - 1, 0), 1.0);
  EXPECT_EQ((*y.coords())(1, 0), 0.125);
  EXPECT_EQ(y.size(), 2 + 3 * 3);
  EXPECT_TRUE(validate_metric(y).empty());
}

TEST(PulseSpace, ContainsEveryBreakpoint) {
  for (int k : {2, 3, 5}) {
    const auto y = pulse_space(pv("1011"), {4, k, 1.0});
    EXPECT_EQ(y.size(), 2 + 4 * 3 * (k - 1));
    std::set<double> xs;
    for (int i = 0; i < y.size(); ++i) xs.insert((*y.coords())(i, 0));
    for (int n = 1; n <= 4; ++n) {
      const auto b = block_breakpoints(n);
      for (double x : {b.left, b.peak, b.foot, b.right}) EXPECT_TRUE(xs.count(x)) << "n=" << n << " x=" << x;
    }
  }
}

TEST(PulseSpace, PeakDistanceIsRootTwoScaled) {
  const auto y = pulse_space(pv("111"), {3, 2, 1.0});
  for (int n = 1; n <= 3; ++n) {
    const double d = y.distance(y.index_of(pulse_label(n, 0, 0)), y.index_of(pulse_label(n, 1, 0)));
    EXPECT_NEAR(d, std::sqrt(2.0) * std::ldexp(1.0, -(n + 2)), 1e-16);
  }
}

TEST(PulseSpace, StraddleDistanceIsRootFiveDelta) {
  // Pulse at block 1, flat block 2, delta = 1/32.
  const auto y = pulse_space(pv("10"), {2, 5, 1.0});
  const int below = y.index_of(pulse_label(2, 2, 3));
  const int above = y.index_of(pulse_label(1, 0, 1));
  EXPECT_EQ((*y.coords())(below, 0), 0.5 - 1.0 / 32);
  EXPECT_EQ((*y.coords())(above, 0), 0.5 + 1.0 / 32);
  EXPECT_EQ((*y.coords())(above, 1), 1.0 / 32);
  EXPECT_NEAR(y.distance(below, above), std::sqrt(5.0) / 32, 1e-16);
}

TEST(PulseSpace, ChordalAcrossPulses) {
  // Two peaks are measured straight through the plane, not along the curve.
  const auto y = pulse_space(pv("11"), {2, 2, 1.0});
  const int p1 = y.index_of(pulse_label(1, 1, 0));
  const int p2 = y.index_of(pulse_label(2, 1, 0));
  EXPECT_DOUBLE_EQ(y.distance(p1, p2), std::hypot(5.0 / 8 - 5.0 / 16, 1.0 / 8 - 1.0 / 16));
}

TEST(ProjectionMap, AllFlatIsIsometry) {
  const auto f = projection_map(pv("000"), {3, 3, 1.0});
  EXPECT_EQ(lipschitz_cost(f).cost, 0.0);
}

TEST(ProjectionMap, OnePulseAttainsRootTwo) {
  const auto r = lipschitz_cost(projection_map(pv("010"), {3, 2, 1.0}));
  EXPECT_EQ(r.dil_forward, 1.0);
  EXPECT_NEAR(r.dil_inverse, std::sqrt(2.0), 1e-15);
  EXPECT_LE(r.cost, 0.5 * std::log(2.0) + 1e-12);
}

TEST(ProjectionMap, SlopeBoundForEveryPulsePattern) {
  for (double eps : {1.0, 0.5, 0.25}) {
    for (const auto& u : SignVector::enumerate(Family::pulse, 4)) {
      const auto r = lipschitz_cost(projection_map(u, {4, 3, eps}));
      EXPECT_LE(r.cost, projection_cost_bound(eps) + 1e-9) << u.str() << " eps=" << eps;
    }
  }
}

TEST(ProjectionMap, HalfSlopeSinglePulse) {
  // ½ log(5/4), confirmed from the direct dilation computation.
  const auto r = lipschitz_cost(projection_map(pv("100"), {3, 2, 0.5}));
  EXPECT_NEAR(r.cost, 0.11157177565710488, 1e-12);
  EXPECT_NEAR(r.dil_inverse, std::sqrt(1.25), 1e-15);
}

}  // namespace
}  // namespace lipdist

#include "lipdist/experiments.hpp"
#include "lipdist/io.hpp"

#include <gtest/gtest.h>

#include <cmath>

namespace lipdist {
namespace {

const double kLog2 = std::log(2.0);

TEST(Constants, ClosedForms) {
  EXPECT_EQ(constants::interval_family_diameter, 1.3862943611198906);
  EXPECT_EQ(constants::interval_family_threshold, 0.6931471805599453);
  EXPECT_EQ(constants::projection_bound, 0.34657359027997264);
  EXPECT_NEAR(constants::pulse_family_threshold, 0.03832731540124634, 1e-16);
  EXPECT_NEAR(projection_cost_bound(1.0), constants::projection_bound, 1e-16);
  EXPECT_NEAR(projection_cost_bound(0.5), 0.11157177565710488, 1e-16);
  EXPECT_EQ(projection_cost_bound(0.0), 0.0);
}

TEST(ExperimentConfig, Validation) {
  ExperimentConfig c;
  EXPECT_NO_THROW(c.validate());
  c.depth = 5;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.enumeration = Enumeration::random;
  EXPECT_NO_THROW(c.validate());
  c.samples = 1;
  EXPECT_THROW(c.validate(), std::invalid_argument);
  c.samples = 2;
  c.slopes = {0.0};
  EXPECT_THROW(c.validate(), std::invalid_argument);
}

TEST(SelectSignVectors, RandomModeIsDistinctSortedAndSeeded) {
  ExperimentConfig c;
  c.depth = 6;
  c.enumeration = Enumeration::random;
  c.random_count = 10;
  c.seed = 11;
  const auto a = select_sign_vectors(c);
  ASSERT_EQ(a.size(), 10u);
  EXPECT_TRUE(std::is_sorted(a.begin(), a.end()));
  EXPECT_EQ(std::adjacent_find(a.begin(), a.end()), a.end());
  EXPECT_EQ(a, select_sign_vectors(c));
  c.seed = 12;
  EXPECT_NE(a, select_sign_vectors(c));
  c.depth = 2;
  EXPECT_EQ(select_sign_vectors(c).size(), 4u);
}

TEST(IntervalExperiment, FrozenValues) {
  const auto rep = lemma_ce_experiment({});
  EXPECT_EQ(rep.members.size(), 8u);
  EXPECT_EQ(rep.separation.pairs.size(), 28u);
  for (int s : rep.sizes) EXPECT_EQ(s, 7);
  for (double d : rep.diagonal) EXPECT_EQ(d, 0.0);
  for (const auto& p : rep.separation.pairs) {
    EXPECT_EQ(p.status, Status::exact);
    ASSERT_TRUE(p.naive_value);
    EXPECT_NEAR(*p.naive_value, p.upper, 1e-12);
  }
  // Independent exhaustive enumeration: min log 2, max 2 log 2.
  EXPECT_NEAR(*rep.separation.min_gap, kLog2, 1e-12);
  EXPECT_NEAR(*rep.separation.max_value, 2 * kLog2, 1e-12);
  EXPECT_TRUE(rep.bound_ok);
  EXPECT_TRUE(rep.separation.naive_agrees);
}

TEST(IntervalExperiment, PairsDifferingOnlyInFirstBlockAreLog2Apart) {
  const auto rep = lemma_ce_experiment({});
  for (const auto& p : rep.separation.pairs) {
    const auto& u = rep.members[static_cast<std::size_t>(p.a)].entries();
    const auto& v = rep.members[static_cast<std::size_t>(p.b)].entries();
    if (u[1] == v[1] && u[2] == v[2]) EXPECT_NEAR(p.upper, kLog2, 1e-12);
  }
}

TEST(PulseExperiment, DepthTwoMatchesBruteForce) {
  // Reference values from an exhaustive enumeration over all 8! bijections.
  ExperimentConfig c;
  c.family = Family::pulse;
  c.depth = 2;
  const auto rep = lemma_ce2_experiment(c);
  ASSERT_EQ(rep.separation.pairs.size(), 6u);
  const double expected[] = {0.3465735902799727, 0.3465735902799727, 0.3465735902799727,
                             0.6931471805599454, 0.3465735902799727, 0.40117323626246876};
  for (std::size_t i = 0; i < 6; ++i) EXPECT_NEAR(rep.separation.pairs[i].upper, expected[i], 1e-12);
  EXPECT_TRUE(rep.separation.naive_agrees);
  EXPECT_TRUE(rep.bound_ok);
}

TEST(PulseExperiment, DepthThree) {
  ExperimentConfig c;
  c.family = Family::pulse;
  const auto rep = lemma_ce2_experiment(c);
  EXPECT_EQ(rep.separation.pairs.size(), 28u);
  for (int s : rep.sizes) EXPECT_EQ(s, 11);
  for (double d : rep.diagonal) EXPECT_EQ(d, 0.0);
  for (const auto& p : rep.separation.pairs) EXPECT_GT(p.lower, 0.0);
  EXPECT_GE(*rep.separation.min_gap, constants::pulse_family_threshold);
  ASSERT_EQ(rep.projections.size(), 8u);
  for (const auto& r : rep.projections) EXPECT_LE(r.report.cost, constants::projection_bound + constants::bound_slack);
  EXPECT_EQ(rep.projections[0].report.cost, 0.0);  // all-flat member
}

TEST(PulseExperiment, RejectsOtherSlopes) {
  ExperimentConfig c;
  c.family = Family::pulse;
  c.slopes = {0.5};
  EXPECT_THROW(lemma_ce2_experiment(c), std::invalid_argument);
  EXPECT_THROW(lemma_ce_experiment(c), std::invalid_argument);
}

TEST(Fixtures, AllPass) {
  const auto rep = geometry_fixture_suite();
  EXPECT_TRUE(rep.all_pass());
  for (const char* name : {"straddle_distance", "peak_distance", "displacement_bound"}) {
    int seen = 0;
    for (const auto& c : rep.checks) {
      if (c.name == name) {
        ++seen;
        EXPECT_LE(c.rel_error, kFixtureRelTol) << name << " n=" << c.n;
      }
    }
    EXPECT_EQ(seen, 3) << name;
  }
}

TEST(Remark, ShrinksWithSlope) {
  const auto rep = remark_ball_experiment(SignVector::parse(Family::pulse, "101"), {1.0, 0.5, 0.25, 0.125}, {3, 2, 1.0});
  ASSERT_EQ(rep.rows.size(), 4u);
  EXPECT_TRUE(rep.monotone);
  EXPECT_TRUE(rep.bounded);
  EXPECT_NEAR(rep.rows[0].report.cost, 0.5 * kLog2, 1e-12);
  EXPECT_NEAR(rep.rows[1].report.cost, 0.11157177565710488, 1e-12);
}

TEST(Remark, RadiusMembership) {
  const auto u = SignVector::parse(Family::pulse, "11");
  const auto rep = remark_ball_experiment(u, {1.0, 0.5}, {2, 3, 1.0}, 0.2);
  EXPECT_EQ(rep.rows[0].inside_ball, false);
  EXPECT_EQ(rep.rows[1].inside_ball, true);
  EXPECT_NEAR(projection_cost_bound(slope_for_radius(0.2)), 0.2, 1e-14);
  EXPECT_EQ(slope_for_radius(10.0), 1.0);
  EXPECT_THROW(slope_for_radius(0.0), std::invalid_argument);
}

TEST(Remark, RejectsBadSlopeLists) {
  const auto u = SignVector::parse(Family::pulse, "11");
  EXPECT_THROW(remark_ball_experiment(u, {0.5, 1.0}, {2, 2, 1.0}), std::invalid_argument);
  EXPECT_THROW(remark_ball_experiment(u, {1.5}, {2, 2, 1.0}), std::invalid_argument);
  EXPECT_THROW(remark_ball_experiment(SignVector::parse(Family::interval, "11"), {1.0}, {2, 2, 1.0}),
               std::invalid_argument);
}

TEST(Determinism, ReportsAreByteIdentical) {
  ExperimentConfig ce;
  ExperimentConfig ce2;
  ce2.family = Family::pulse;
  ce2.depth = 2;
  EXPECT_EQ(io::to_csv(lemma_ce_experiment(ce)), io::to_csv(lemma_ce_experiment(ce)));
  EXPECT_EQ(io::to_json(lemma_ce_experiment(ce)).dump(), io::to_json(lemma_ce_experiment(ce)).dump());
  EXPECT_EQ(io::to_csv(lemma_ce2_experiment(ce2)), io::to_csv(lemma_ce2_experiment(ce2)));
  EXPECT_EQ(io::to_json(geometry_fixture_suite()).dump(), io::to_json(geometry_fixture_suite()).dump());
}

}  // namespace
}  // namespace lipdist

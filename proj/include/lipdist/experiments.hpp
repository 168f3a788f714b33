#pragma once

#include "lipdist/constructions.hpp"
#include "lipdist/solver.hpp"

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lipdist {

namespace constants {
/// Upper bound on d_L within the interval family (blockwise affine maps).
inline const double interval_family_diameter = 2.0 * std::log(2.0);
/// Separation threshold of the interval family.
inline const double interval_family_threshold = std::log(2.0);
/// Upper bound on d_L between [0,1] and a pulse curve of slope 1.
inline const double projection_bound = 0.5 * std::log(2.0);
/// Separation threshold of the pulse family: (log(sqrt2 + 1) - log sqrt5) / 2.
inline const double pulse_family_threshold = (std::log(std::sqrt(2.0) + 1.0) - std::log(std::sqrt(5.0))) / 2.0;
/// Slack added to every upper-bound check.
constexpr double bound_slack = 1e-9;
}  // namespace constants

/// ½ log(1 + eps²), the projection cost bound for slope eps.
double projection_cost_bound(double eps);

enum class Enumeration { exhaustive, random };

struct ExperimentConfig {
  Family family = Family::interval;
  int depth = 3;
  int samples = 2;
  std::vector<double> slopes{1.0};
  Enumeration enumeration = Enumeration::exhaustive;
  int random_count = 8;  // number of distinct sign vectors in random mode
  std::uint64_t seed = 0;
  SearchBudget budget;
  bool naive_check = true;
  int threads = 1;

  void validate() const;
};

/// Sign vectors selected by the config, sorted lexicographically.
std::vector<SignVector> select_sign_vectors(const ExperimentConfig& cfg);

inline constexpr const char* kDeskScaleCaption =
    "Values are computed on finite samples of the spaces. A positive discretized gap is a finite-resolution analogue "
    "of the separation statement, not a proof of it: a bijection of finite samples is less constrained than a "
    "bi-Lipschitz map of the full space.";

struct ProjectionRow {
  std::string u;
  double eps = 1.0;
  DistortionReport report;
  double bound = 0.0;
};

struct FamilyReport {
  std::string experiment;  // "ce" or "ce2"
  ExperimentConfig config;
  std::vector<SignVector> members;
  std::vector<int> sizes;
  SeparationReport separation;
  std::vector<double> diagonal;  // d_L(X_u, X_u), expected to be exactly 0
  double family_bound = 0.0;   // 2 log 2 (ce) or ½ log 2 (ce2)
  double threshold = 0.0;     // log 2 (ce) or the pulse threshold (ce2)
  bool bound_ok = true;       // ce: max_value within 2 log 2; ce2: projection costs within ½ log 2
  std::vector<ProjectionRow> projections;  // ce2 only
  std::string caption = kDeskScaleCaption;
};

/// Interval family: every pairwise d_L, separation against log 2, and the
/// 2 log 2 diameter check.
FamilyReport lemma_ce_experiment(const ExperimentConfig& cfg);

/// Pulse family (slope 1): every pairwise d_L, separation against the pulse
/// threshold, and the ½ log 2 projection check.
FamilyReport lemma_ce2_experiment(const ExperimentConfig& cfg);

struct FixtureCheck {
  std::string name;
  int n = 0;
  double expected = 0.0;
  double measured = 0.0;
  double rel_error = 0.0;
  bool pass = false;
};

struct FixtureReport {
  std::vector<FixtureCheck> checks;
  bool all_pass() const;
};

constexpr double kFixtureRelTol = 1e-12;

/// Recomputes the closed-form distances used in the separation arguments
/// from constructed spaces, for blocks n = 1..3.
FixtureReport geometry_fixture_suite();

struct RemarkRow {
  double eps = 1.0;
  DistortionReport report;
  double bound = 0.0;
  std::optional<bool> inside_ball;  // set when a radius was given
};

struct RemarkReport {
  std::string u;
  DiscretizationParams params;
  std::vector<RemarkRow> rows;
  std::optional<double> radius;
  bool monotone = true;  // costs strictly decrease along the list
  bool bounded = true;   // every cost <= ½ log(1 + eps²) + slack
  std::string caption = kDeskScaleCaption;
};

/// Projection cost of Y^eps_u for each eps of a strictly decreasing list in (0, 1].
RemarkReport remark_ball_experiment(const SignVector& u, const std::vector<double>& slopes,
                                    const DiscretizationParams& params, std::optional<double> radius = std::nullopt);

/// Largest slope whose projection bound is below `radius`: sqrt(exp(2 radius) - 1), capped at 1.
double slope_for_radius(double radius);

}  // namespace lipdist

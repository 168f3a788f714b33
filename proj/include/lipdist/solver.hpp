#pragma once

#include "lipdist/metric_space.hpp"

#include <chrono>
#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace lipdist {

/// Search limits. Unset fields are unlimited; a zero limit skips the search
/// entirely and returns the bracket from the cheap bounds.
struct SearchBudget {
  std::optional<std::uint64_t> max_nodes;
  std::optional<double> max_seconds;

  bool is_zero() const { return (max_nodes && *max_nodes == 0) || (max_seconds && *max_seconds <= 0.0); }
};

enum class Status { exact, bracketed, infinite };

const char* to_string(Status status);

/// Outcome of a d_L computation.
///
/// exact:     lower == upper == value == lipschitz_cost(best_map).cost and
///            no bijection is cheaper.
/// bracketed: lower <= value == upper == lipschitz_cost(best_map).cost.
/// infinite:  the spaces differ in size; value/lower/upper are +inf and
///            there is no map.
struct LipschitzResult {
  Status status = Status::exact;
  double value = 0.0;
  double lower = 0.0;
  double upper = 0.0;
  std::optional<PointMap> best_map;
  std::uint64_t nodes_explored = 0;
  std::chrono::duration<double> elapsed{0};
  /// False only if the tie-breaking pass ran out of budget; the map is then
  /// optimal but possibly not the lexicographically smallest optimum.
  bool canonical_map = true;
};

/// Absolute slack used for cost comparisons inside the search.
constexpr double kSearchSlack = 1e-12;

/// Largest size accepted by naive_distance.
constexpr int kNaiveMaxPoints = 8;

/// Minimum Lipschitz cost over all bijections by depth-first branch and
/// bound. Both spaces must be valid metric spaces.
LipschitzResult exact_distance(const FiniteMetricSpace& x, const FiniteMetricSpace& y, const SearchBudget& budget = {});

/// Exhaustive minimum over all |X|! bijections; +inf on a size mismatch.
/// Throws std::invalid_argument above kNaiveMaxPoints points.
double naive_distance(const FiniteMetricSpace& x, const FiniteMetricSpace& y);

/// log max(r+, 1) + log max(r-, 1) from the sorted pair-distance spectra,
/// where r+ = max s_Y[i]/s_X[i] and r- = max s_X[i]/s_Y[i].
double spectrum_lower_bound(const FiniteMetricSpace& x, const FiniteMetricSpace& y);

struct UpperBound {
  double value;
  PointMap map;
};

/// Best bijection from eccentricity-sorted matching plus randomized greedy
/// restarts, each polished by 2-swap hill climbing. Deterministic in seed.
UpperBound local_search_upper_bound(const FiniteMetricSpace& x, const FiniteMetricSpace& y, int restarts = 8,
                                    std::uint64_t seed = 0);

// Separation certificates ---------------------------------------------------

enum class Escalation {
  below_threshold,  // run the exact search only where the spectrum bound is below the threshold
  always,           // run the exact search on every matched pair
};

struct SeparationOptions {
  SearchBudget budget;
  Escalation escalation = Escalation::below_threshold;
  /// Cross-check each exact value against naive_distance when the spaces
  /// are small enough.
  bool naive_check = false;
  int threads = 1;
};

struct PairEntry {
  int a = 0;
  int b = 0;
  std::string name_a;
  std::string name_b;
  /// Always filled when sizes match; +inf otherwise.
  double spectrum_bound = 0.0;
  /// exact, bracketed or infinite; nullopt when the pair was certified by
  /// the spectrum bound alone.
  std::optional<Status> status;
  double lower = 0.0;
  double upper = std::numeric_limits<double>::infinity();
  std::optional<Permutation> best_perm;
  std::optional<double> naive_value;
  std::uint64_t nodes = 0;
  bool below_threshold = false;

  /// Certified lower bound for d_L of the pair.
  double certified_lower() const { return lower; }
  bool is_exact() const { return status == Status::exact; }
};

struct SeparationReport {
  std::string family;
  double threshold = 0.0;
  std::vector<std::string> names;
  std::vector<PairEntry> pairs;
  /// Smallest certified lower bound over distinct pairs; absent for fewer
  /// than two spaces.
  std::optional<double> min_gap;
  /// Largest finite upper value over distinct pairs.
  std::optional<double> max_value;
  /// Pairs whose value (or, when bracketed, lower bound) is below threshold.
  std::vector<std::pair<int, int>> below_threshold;
  /// Agreement of every naive cross-check that was run.
  bool naive_agrees = true;
};

SeparationReport certify_separation(const std::vector<FiniteMetricSpace>& spaces, double threshold,
                                    const SeparationOptions& options = {}, std::string family = {});

}  // namespace lipdist

#pragma once

#include "lipdist/metric_space.hpp"

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace lipdist {

/// Interval family: entries in {1,2}, block n is [2^-n, 2^-n + 2^-(n+u_n)].
/// Pulse family: entries in {0,1}, block n is flat (0) or carries a pulse (1).
enum class Family { interval, pulse };

const char* to_string(Family family);
Family parse_family(std::string_view name);

/// Thrown for a sign-vector string containing a character outside the
/// family's alphabet. `position` is 1-based.
class SignVectorError : public std::invalid_argument {
 public:
  SignVectorError(const std::string& what, std::size_t position)
      : std::invalid_argument(what), position_(position) {}
  std::size_t position() const { return position_; }

 private:
  std::size_t position_;
};

class SignVector {
 public:
  SignVector(Family family, std::vector<int> entries);

  /// Parses a compact digit string such as "121" or "0101".
  static SignVector parse(Family family, std::string_view digits);

  /// All vectors of length n in lexicographic order.
  static std::vector<SignVector> enumerate(Family family, int n);

  Family family() const { return family_; }
  int size() const { return static_cast<int>(entries_.size()); }
  /// 1-based block index, matching the block numbering of the families.
  int block(int n) const { return entries_.at(static_cast<std::size_t>(n - 1)); }
  const std::vector<int>& entries() const { return entries_; }
  std::string str() const;

  friend bool operator==(const SignVector&, const SignVector&) = default;
  friend auto operator<=>(const SignVector& a, const SignVector& b) { return a.entries_ <=> b.entries_; }

 private:
  Family family_;
  std::vector<int> entries_;
};

struct DiscretizationParams {
  int depth = 1;              // number of retained blocks N
  int samples_per_block = 2;  // k, endpoints inclusive
  double slope = 1.0;         // pulse slope eps, 0 < eps <= 1

  void validate() const;
};

/// True when every sample of a k-grid is also a sample of the refined grid.
bool is_nested_refinement(int k, int refined_k);

// Interval family -------------------------------------------------------

/// {0} together with k uniform samples of each I(n, u_n), n = 1..N, sorted
/// ascending. Labels are "origin" and "b<n>.s<j>".
FiniteMetricSpace interval_space(const SignVector& u, const DiscretizationParams& params);

/// Abscissae of interval_space in point order.
std::vector<double> interval_points(const SignVector& u, const DiscretizationParams& params);

/// The blockwise affine map X_u -> X_v sending sample j of block n to
/// sample j of block n and 0 to 0.
PointMap canonical_interval_map(const SignVector& u, const SignVector& v, const DiscretizationParams& params);

// Pulse family -----------------------------------------------------------

/// Breakpoints of block n: 2^-n, 5/2^(n+2) (the peak), 3/2^(n+1), 2^-(n-1).
struct BlockBreakpoints {
  double left, peak, foot, right;
};
BlockBreakpoints block_breakpoints(int n);

/// Height above x of the curve Y^eps_u. x = 0 gives 0; x must otherwise
/// lie in one of the retained blocks (0 < x <= 1, x >= 2^-N).
double pulse_height(const SignVector& u, double x, double eps);

/// Shared abscissa grid of every pulse space of depth N: the origin, then k
/// samples per linear piece (rise, fall, flat) of each block, ascending.
/// Labels are "origin" and "b<n>.p<piece>.s<j>"; each piece owns its left
/// end, and x = 1 is "b1.p2.s<k-1>". The peak of block n is "b<n>.p1.s0".
struct PulseGrid {
  std::vector<double> xs;
  std::vector<std::string> labels;
};
PulseGrid pulse_grid(const DiscretizationParams& params);

std::string pulse_label(int block, int piece, int sample);

/// Points (x, pulse_height(u, x, eps)) for x on the pulse grid, with the
/// ambient Euclidean (chordal) metric.
FiniteMetricSpace pulse_space(const SignVector& u, const DiscretizationParams& params);

/// The pulse grid's abscissae as a subset of [0,1] with metric |x - y|.
FiniteMetricSpace segment_space(const DiscretizationParams& params);

/// (x, h) -> x from pulse_space(u) onto segment_space; point order matches,
/// so the permutation is the identity.
PointMap projection_map(const SignVector& u, const DiscretizationParams& params);

}  // namespace lipdist

#pragma once

// Brute-force reference computations that deliberately avoid the library's
// dilation and search code: they work directly on raw matrices.

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace lipdist::testing {

struct RawDistortion {
  long double forward;
  long double inverse;
  long double cost;
};

inline RawDistortion raw_distortion(const Eigen::MatrixXd& dx, const Eigen::MatrixXd& dy, const std::vector<int>& p) {
  long double f = 0, b = 0;
  const auto n = static_cast<int>(p.size());
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (i == j) continue;
      const long double ratio = static_cast<long double>(dy(p[i], p[j])) / dx(i, j);
      f = std::max(f, ratio);
      b = std::max(b, 1.0L / ratio);
    }
  }
  if (n < 2) f = b = 1;
  return {f, b, std::fabs(std::log(f)) + std::fabs(std::log(b))};
}

inline long double brute_force_distance(const Eigen::MatrixXd& dx, const Eigen::MatrixXd& dy) {
  if (dx.rows() != dy.rows()) return std::numeric_limits<long double>::infinity();
  std::vector<int> p(static_cast<std::size_t>(dx.rows()));
  std::iota(p.begin(), p.end(), 0);
  long double best = std::numeric_limits<long double>::infinity();
  do {
    best = std::min(best, raw_distortion(dx, dy, p).cost);
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

}  // namespace lipdist::testing

#pragma once

#include "lipdist/metric_matrix.hpp"

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace lipdist {

/// Raised when labels, matrix, and coordinates disagree in shape.
class StructureError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// A finite set of labeled points with a distance matrix and, for spaces
/// embedded in the plane, their coordinates.
///
/// Instances are immutable and cheap to copy: copies share the underlying
/// storage, so a space can be handed to many maps and worker threads.
/// Construction checks only shape; use validate_metric for the axioms.
class FiniteMetricSpace {
 public:
  FiniteMetricSpace(std::string name, std::vector<std::string> labels, DistanceMatrixd dist,
                    std::optional<PlanarCoordsd> coords = std::nullopt);

  /// Metric space on the plane with the Euclidean metric of `coords`.
  static FiniteMetricSpace from_coords(std::string name, std::vector<std::string> labels, PlanarCoordsd coords);

  const std::string& name() const { return impl_->name; }
  const std::vector<std::string>& labels() const { return impl_->labels; }
  const DistanceMatrixd& distances() const { return impl_->dist; }
  const std::optional<PlanarCoordsd>& coords() const { return impl_->coords; }

  int size() const { return static_cast<int>(impl_->labels.size()); }
  double distance(int i, int j) const { return impl_->dist(i, j); }

  /// Index of the point with this label, if any.
  std::optional<int> find(const std::string& label) const;
  int index_of(const std::string& label) const;

  /// Same points and labels with every distance multiplied by `factor`.
  /// Coordinates are scaled as well.
  FiniteMetricSpace scaled(double factor, std::string name) const;

  bool same_storage(const FiniteMetricSpace& other) const { return impl_ == other.impl_; }

 private:
  struct Impl {
    std::string name;
    std::vector<std::string> labels;
    DistanceMatrixd dist;
    std::optional<PlanarCoordsd> coords;
  };
  std::shared_ptr<const Impl> impl_;
};

enum class Axiom { zero_diagonal, symmetry, positivity, triangle, coordinates, finiteness };

const char* to_string(Axiom axiom);

/// One failed axiom. For the triangle inequality, `j` is the intermediate
/// point and the failing relation is d(i,k) > d(i,j) + d(j,k); other axioms
/// leave `k` unset.
struct Violation {
  Axiom axiom;
  int i;
  int j;
  std::optional<int> k;
  std::string message;
};

constexpr double kTriangleRelTol = 1e-9;
constexpr double kCoordsRelTol = 1e-12;

std::vector<Violation> validate_metric(const FiniteMetricSpace& space);

/// Throws std::invalid_argument carrying the first violation if the space
/// is not a metric space.
void require_metric(const FiniteMetricSpace& space);

using Permutation = std::vector<int>;

/// A bijection between two finite spaces: source point i goes to target
/// point perm[i].
class PointMap {
 public:
  PointMap(FiniteMetricSpace source, FiniteMetricSpace target, Permutation perm);

  static PointMap identity(const FiniteMetricSpace& space);

  const FiniteMetricSpace& source() const { return source_; }
  const FiniteMetricSpace& target() const { return target_; }
  const Permutation& perm() const { return perm_; }
  int operator()(int i) const { return perm_[static_cast<std::size_t>(i)]; }

  PointMap inverse() const;

 private:
  FiniteMetricSpace source_;
  FiniteMetricSpace target_;
  Permutation perm_;
};

/// `outer ∘ inner`; requires inner.target() and outer.source() to have the same size.
PointMap compose(const PointMap& outer, const PointMap& inner);

bool is_permutation(const Permutation& perm);

struct DistortionReport {
  double dil_forward = 1.0;
  double dil_inverse = 1.0;
  double cost = 0.0;
};

/// Largest ratio d_Y(f(x), f(y)) / d_X(x, y) over distinct pairs; 1 when
/// there are no pairs.
double dilation(const PointMap& map);

/// dil(f), dil(f^-1) and |log dil(f)| + |log dil(f^-1)| (natural log).
DistortionReport lipschitz_cost(const PointMap& map);

/// Exact comparison cost <= eps. Negative eps is an argument error.
bool is_epsilon_isometry(const PointMap& map, double eps);

}  // namespace lipdist

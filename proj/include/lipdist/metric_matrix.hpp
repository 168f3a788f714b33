#pragma once

#include <Eigen/Core>

#include <algorithm>
#include <cmath>
#include <vector>

namespace lipdist {

template <typename Scalar>
using DistanceMatrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar>
using PlanarCoords = Eigen::Matrix<Scalar, Eigen::Dynamic, 2>;

using DistanceMatrixd = DistanceMatrix<double>;
using PlanarCoordsd = PlanarCoords<double>;

/// Pairwise Euclidean distances between the rows of `points`.
template <typename Derived>
DistanceMatrix<typename Derived::Scalar> euclidean_distances(const Eigen::MatrixBase<Derived>& points) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = points.rows();
  DistanceMatrix<Scalar> d = DistanceMatrix<Scalar>::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      Scalar acc(0);
      for (Eigen::Index c = 0; c < points.cols(); ++c) {
        const Scalar diff = points(i, c) - points(j, c);
        acc += diff * diff;
      }
      d(i, j) = d(j, i) = std::sqrt(acc);
    }
  }
  return d;
}

/// Distances |x_i - x_j| between the entries of a vector of abscissae.
template <typename Derived>
DistanceMatrix<typename Derived::Scalar> line_distances(const Eigen::MatrixBase<Derived>& xs) {
  using Scalar = typename Derived::Scalar;
  const Eigen::Index n = xs.size();
  DistanceMatrix<Scalar> d = DistanceMatrix<Scalar>::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) {
      d(i, j) = d(j, i) = std::abs(xs(i) - xs(j));
    }
  }
  return d;
}

/// Strict upper triangle, row-major.
template <typename Derived>
std::vector<typename Derived::Scalar> upper_triangle(const Eigen::MatrixBase<Derived>& d) {
  std::vector<typename Derived::Scalar> out;
  const Eigen::Index n = d.rows();
  out.reserve(static_cast<std::size_t>(n * (n - 1) / 2));
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j) out.push_back(d(i, j));
  }
  return out;
}

/// Inverse of upper_triangle; the diagonal is zero and the result is symmetric.
template <typename Scalar>
DistanceMatrix<Scalar> from_upper_triangle(Eigen::Index n, const std::vector<Scalar>& packed) {
  DistanceMatrix<Scalar> d = DistanceMatrix<Scalar>::Zero(n, n);
  std::size_t k = 0;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = i + 1; j < n; ++j, ++k) d(i, j) = d(j, i) = packed.at(k);
  }
  return d;
}

/// Sorted multiset of pairwise distances.
template <typename Derived>
std::vector<typename Derived::Scalar> distance_spectrum(const Eigen::MatrixBase<Derived>& d) {
  auto s = upper_triangle(d);
  std::sort(s.begin(), s.end());
  return s;
}

/// Largest distance from each point to any other.
template <typename Derived>
Eigen::Matrix<typename Derived::Scalar, Eigen::Dynamic, 1> eccentricities(const Eigen::MatrixBase<Derived>& d) {
  using Scalar = typename Derived::Scalar;
  Eigen::Matrix<Scalar, Eigen::Dynamic, 1> e(d.rows());
  for (Eigen::Index i = 0; i < d.rows(); ++i) e(i) = d.rows() > 0 ? d.row(i).maxCoeff() : Scalar(0);
  return e;
}

template <typename Derived>
typename Derived::Scalar diameter(const Eigen::MatrixBase<Derived>& d) {
  return d.size() == 0 ? typename Derived::Scalar(0) : d.maxCoeff();
}

}  // namespace lipdist

#include "lipdist/metric_space.hpp"

#include <cmath>
#include <sstream>
#include <utility>

namespace lipdist {

FiniteMetricSpace::FiniteMetricSpace(std::string name, std::vector<std::string> labels, DistanceMatrixd dist,
                                     std::optional<PlanarCoordsd> coords) {
  const auto n = static_cast<Eigen::Index>(labels.size());
  if (dist.rows() != dist.cols()) {
    throw StructureError("distance matrix is " + std::to_string(dist.rows()) + "x" + std::to_string(dist.cols()) +
                         ", expected square");
  }
  if (dist.rows() != n) {
    throw StructureError("distance matrix has " + std::to_string(dist.rows()) + " rows but there are " +
                         std::to_string(n) + " labels");
  }
  if (coords && coords->rows() != n) {
    throw StructureError("coordinates have " + std::to_string(coords->rows()) + " rows but there are " +
                         std::to_string(n) + " labels");
  }
  impl_ = std::make_shared<const Impl>(Impl{std::move(name), std::move(labels), std::move(dist), std::move(coords)});
}

FiniteMetricSpace FiniteMetricSpace::from_coords(std::string name, std::vector<std::string> labels,
                                                 PlanarCoordsd coords) {
  DistanceMatrixd d = euclidean_distances(coords);
  return FiniteMetricSpace(std::move(name), std::move(labels), std::move(d), std::move(coords));
}

std::optional<int> FiniteMetricSpace::find(const std::string& label) const {
  const auto& ls = impl_->labels;
  for (std::size_t i = 0; i < ls.size(); ++i) {
    if (ls[i] == label) return static_cast<int>(i);
  }
  return std::nullopt;
}

int FiniteMetricSpace::index_of(const std::string& label) const {
  if (auto i = find(label)) return *i;
  throw std::invalid_argument("no point labeled '" + label + "' in space '" + name() + "'");
}

FiniteMetricSpace FiniteMetricSpace::scaled(double factor, std::string name) const {
  std::optional<PlanarCoordsd> c;
  if (impl_->coords) c = (*impl_->coords * factor).eval();
  return FiniteMetricSpace(std::move(name), impl_->labels, impl_->dist * factor, std::move(c));
}

const char* to_string(Axiom axiom) {
  switch (axiom) {
    case Axiom::zero_diagonal: return "zero-diagonal";
    case Axiom::symmetry: return "symmetry";
    case Axiom::positivity: return "positivity";
    case Axiom::triangle: return "triangle-inequality";
    case Axiom::coordinates: return "coordinates";
    case Axiom::finiteness: return "finiteness";
  }
  return "unknown";
}

namespace {

std::string fmt_pair(const char* what, int i, int j) {
  std::ostringstream os;
  os << what << " at (" << i << "," << j << ")";
  return os.str();
}

}  // namespace

std::vector<Violation> validate_metric(const FiniteMetricSpace& space) {
  std::vector<Violation> out;
  const auto& d = space.distances();
  const int n = space.size();

  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      if (!std::isfinite(d(i, j))) {
        out.push_back({Axiom::finiteness, i, j, std::nullopt, fmt_pair("non-finite distance", i, j)});
      }
    }
  }
  if (!out.empty()) return out;

  for (int i = 0; i < n; ++i) {
    if (d(i, i) != 0.0) out.push_back({Axiom::zero_diagonal, i, i, std::nullopt, fmt_pair("nonzero self-distance", i, i)});
    for (int j = i + 1; j < n; ++j) {
      if (d(i, j) != d(j, i)) out.push_back({Axiom::symmetry, i, j, std::nullopt, fmt_pair("asymmetric distance", i, j)});
      if (!(d(i, j) > 0.0) || !(d(j, i) > 0.0)) {
        out.push_back({Axiom::positivity, i, j, std::nullopt, fmt_pair("non-positive distance between distinct points", i, j)});
      }
    }
  }

  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      for (int j = 0; j < n; ++j) {
        if (j == i || j == k) continue;
        const double via = d(i, j) + d(j, k);
        if (d(i, k) > via * (1.0 + kTriangleRelTol)) {
          std::ostringstream os;
          os << "triangle inequality fails at (" << i << "," << j << "," << k << "): d(" << i << "," << k
             << ")=" << d(i, k) << " > " << via;
          out.push_back({Axiom::triangle, i, j, k, os.str()});
        }
      }
    }
  }

  if (const auto& c = space.coords()) {
    const DistanceMatrixd e = euclidean_distances(*c);
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const double scale = std::max(std::abs(e(i, j)), std::abs(d(i, j)));
        if (std::abs(e(i, j) - d(i, j)) > kCoordsRelTol * scale) {
          out.push_back({Axiom::coordinates, i, j, std::nullopt, fmt_pair("distance disagrees with coordinates", i, j)});
        }
      }
    }
  }
  return out;
}

void require_metric(const FiniteMetricSpace& space) {
  const auto v = validate_metric(space);
  if (!v.empty()) {
    throw std::invalid_argument("space '" + space.name() + "' is not a metric space: " + v.front().message);
  }
}

bool is_permutation(const Permutation& perm) {
  std::vector<char> seen(perm.size(), 0);
  for (int t : perm) {
    if (t < 0 || static_cast<std::size_t>(t) >= perm.size() || seen[static_cast<std::size_t>(t)]) return false;
    seen[static_cast<std::size_t>(t)] = 1;
  }
  return true;
}

PointMap::PointMap(FiniteMetricSpace source, FiniteMetricSpace target, Permutation perm)
    : source_(std::move(source)), target_(std::move(target)), perm_(std::move(perm)) {
  if (source_.size() != target_.size()) {
    throw std::invalid_argument("map between spaces of different sizes (" + std::to_string(source_.size()) + " vs " +
                                std::to_string(target_.size()) + ")");
  }
  if (static_cast<int>(perm_.size()) != source_.size()) {
    throw std::invalid_argument("permutation length does not match space size");
  }
  if (!is_permutation(perm_)) throw std::invalid_argument("map is not a bijection");
}

PointMap PointMap::identity(const FiniteMetricSpace& space) {
  Permutation p(static_cast<std::size_t>(space.size()));
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = static_cast<int>(i);
  return PointMap(space, space, std::move(p));
}

PointMap PointMap::inverse() const {
  Permutation inv(perm_.size());
  for (std::size_t i = 0; i < perm_.size(); ++i) inv[static_cast<std::size_t>(perm_[i])] = static_cast<int>(i);
  return PointMap(target_, source_, std::move(inv));
}

PointMap compose(const PointMap& outer, const PointMap& inner) {
  if (inner.target().size() != outer.source().size()) {
    throw std::invalid_argument("maps are not composable");
  }
  Permutation p(inner.perm().size());
  for (std::size_t i = 0; i < p.size(); ++i) p[i] = outer(inner(static_cast<int>(i)));
  return PointMap(inner.source(), outer.target(), std::move(p));
}

double dilation(const PointMap& map) {
  const auto& dx = map.source().distances();
  const auto& dy = map.target().distances();
  const auto& p = map.perm();
  const int n = map.source().size();
  double best = 0.0;
  bool any = false;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double r = dy(p[i], p[j]) / dx(i, j);
      if (!any || r > best) best = r;
      any = true;
    }
  }
  return any ? best : 1.0;
}

DistortionReport lipschitz_cost(const PointMap& map) {
  DistortionReport r;
  r.dil_forward = dilation(map);
  r.dil_inverse = dilation(map.inverse());
  r.cost = std::abs(std::log(r.dil_forward)) + std::abs(std::log(r.dil_inverse));
  return r;
}

bool is_epsilon_isometry(const PointMap& map, double eps) {
  if (!(eps >= 0.0)) throw std::invalid_argument("eps must be nonnegative");
  return lipschitz_cost(map).cost <= eps;
}

}  // namespace lipdist

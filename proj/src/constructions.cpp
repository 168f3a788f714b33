#include "lipdist/constructions.hpp"

#include <cmath>
#include <utility>

namespace lipdist {

namespace {

double pow2(int e) { return std::ldexp(1.0, e); }

bool in_alphabet(Family f, int value) {
  return f == Family::interval ? (value == 1 || value == 2) : (value == 0 || value == 1);
}

void require_family(const SignVector& u, Family f, const char* op) {
  if (u.family() != f) {
    throw std::invalid_argument(std::string(op) + " expects a " + to_string(f) + " sign vector, got " +
                                to_string(u.family()));
  }
}

void require_depth(const SignVector& u, const DiscretizationParams& params) {
  params.validate();
  if (u.size() != params.depth) {
    throw std::invalid_argument("sign vector has length " + std::to_string(u.size()) + " but depth is " +
                                std::to_string(params.depth));
  }
}

}  // namespace

const char* to_string(Family family) { return family == Family::interval ? "interval" : "pulse"; }

Family parse_family(std::string_view name) {
  if (name == "interval") return Family::interval;
  if (name == "pulse") return Family::pulse;
  throw std::invalid_argument("unknown family '" + std::string(name) + "' (expected interval or pulse)");
}

SignVector::SignVector(Family family, std::vector<int> entries) : family_(family), entries_(std::move(entries)) {
  if (entries_.empty()) throw std::invalid_argument("sign vector must have at least one entry");
  for (std::size_t i = 0; i < entries_.size(); ++i) {
    if (!in_alphabet(family_, entries_[i])) {
      throw SignVectorError("entry " + std::to_string(entries_[i]) + " at position " + std::to_string(i + 1) +
                                " is outside the " + to_string(family_) + " alphabet",
                            i + 1);
    }
  }
}

SignVector SignVector::parse(Family family, std::string_view digits) {
  if (digits.empty()) throw SignVectorError("empty sign vector", 0);
  std::vector<int> entries;
  entries.reserve(digits.size());
  for (std::size_t i = 0; i < digits.size(); ++i) {
    const char c = digits[i];
    const int value = (c >= '0' && c <= '9') ? c - '0' : -1;
    if (!in_alphabet(family, value)) {
      const std::string alphabet = family == Family::interval ? "{1,2}" : "{0,1}";
      throw SignVectorError("invalid character '" + std::string(1, c) + "' at position " + std::to_string(i + 1) +
                                " (alphabet is " + alphabet + ")",
                            i + 1);
    }
    entries.push_back(value);
  }
  return SignVector(family, std::move(entries));
}

std::vector<SignVector> SignVector::enumerate(Family family, int n) {
  if (n < 1) throw std::invalid_argument("sign vector length must be positive");
  const int lo = family == Family::interval ? 1 : 0;
  std::vector<SignVector> out;
  std::vector<int> e(static_cast<std::size_t>(n), lo);
  for (;;) {
    out.emplace_back(family, e);
    int pos = n - 1;
    while (pos >= 0 && e[static_cast<std::size_t>(pos)] == lo + 1) e[static_cast<std::size_t>(pos--)] = lo;
    if (pos < 0) break;
    ++e[static_cast<std::size_t>(pos)];
  }
  return out;
}

std::string SignVector::str() const {
  std::string s;
  for (int e : entries_) s.push_back(static_cast<char>('0' + e));
  return s;
}

void DiscretizationParams::validate() const {
  if (depth < 1) throw std::invalid_argument("depth N must be at least 1");
  if (samples_per_block < 2) throw std::invalid_argument("samples per block k must be at least 2");
  if (!(slope > 0.0 && slope <= 1.0)) throw std::invalid_argument("slope eps must lie in (0, 1]");
}

bool is_nested_refinement(int k, int refined_k) {
  return k >= 2 && refined_k >= k && (refined_k - 1) % (k - 1) == 0;
}

std::vector<double> interval_points(const SignVector& u, const DiscretizationParams& params) {
  require_family(u, Family::interval, "interval_space");
  require_depth(u, params);
  const int k = params.samples_per_block;
  std::vector<double> xs{0.0};
  for (int n = params.depth; n >= 1; --n) {
    const double left = pow2(-n);
    const double width = pow2(-(n + u.block(n)));
    for (int j = 0; j < k; ++j) xs.push_back(left + width * j / (k - 1));
  }
  return xs;
}

FiniteMetricSpace interval_space(const SignVector& u, const DiscretizationParams& params) {
  const auto xs = interval_points(u, params);
  std::vector<std::string> labels{"origin"};
  for (int n = params.depth; n >= 1; --n) {
    for (int j = 0; j < params.samples_per_block; ++j) labels.push_back("b" + std::to_string(n) + ".s" + std::to_string(j));
  }
  const Eigen::Map<const Eigen::VectorXd> x(xs.data(), static_cast<Eigen::Index>(xs.size()));
  return FiniteMetricSpace("X_" + u.str(), std::move(labels), line_distances(x));
}

PointMap canonical_interval_map(const SignVector& u, const SignVector& v, const DiscretizationParams& params) {
  if (u.size() != v.size()) {
    throw std::invalid_argument("sign vectors have different lengths (" + std::to_string(u.size()) + " vs " +
                                std::to_string(v.size()) + ")");
  }
  auto source = interval_space(u, params);
  auto target = interval_space(v, params);
  // Both spaces list the origin, then blocks N..1 with k samples each, so
  // sample j of block n sits at the same index on both sides.
  auto perm = PointMap::identity(source).perm();
  return PointMap(std::move(source), std::move(target), std::move(perm));
}

BlockBreakpoints block_breakpoints(int n) {
  if (n < 1) throw std::invalid_argument("block index must be positive");
  return {pow2(-n), 5.0 * pow2(-(n + 2)), 3.0 * pow2(-(n + 1)), pow2(-(n - 1))};
}

double pulse_height(const SignVector& u, double x, double eps) {
  require_family(u, Family::pulse, "pulse_height");
  if (!(eps > 0.0)) throw std::invalid_argument("slope eps must be positive");
  if (x == 0.0) return 0.0;
  if (!(x > 0.0 && x <= 1.0)) throw std::invalid_argument("x = " + std::to_string(x) + " lies outside (0, 1]");
  int n = 1;
  while (x < pow2(-n)) {
    if (++n > u.size()) {
      throw std::invalid_argument("x = " + std::to_string(x) + " lies below the retained blocks");
    }
  }
  if (u.block(n) == 0) return 0.0;
  const auto b = block_breakpoints(n);
  if (x <= b.peak) return eps * (x - b.left);
  if (x <= b.foot) return eps * (b.foot - x);
  return 0.0;
}

std::string pulse_label(int block, int piece, int sample) {
  return "b" + std::to_string(block) + ".p" + std::to_string(piece) + ".s" + std::to_string(sample);
}

PulseGrid pulse_grid(const DiscretizationParams& params) {
  params.validate();
  const int k = params.samples_per_block;
  PulseGrid g;
  g.xs.push_back(0.0);
  g.labels.emplace_back("origin");
  for (int n = params.depth; n >= 1; --n) {
    const auto b = block_breakpoints(n);
    const double ends[4] = {b.left, b.peak, b.foot, b.right};
    for (int piece = 0; piece < 3; ++piece) {
      const double a = ends[piece];
      const double w = ends[piece + 1] - a;
      for (int j = 0; j + 1 < k; ++j) {
        g.xs.push_back(a + w * j / (k - 1));
        g.labels.push_back(pulse_label(n, piece, j));
      }
    }
  }
  g.xs.push_back(1.0);
  g.labels.push_back(pulse_label(1, 2, k - 1));
  return g;
}

FiniteMetricSpace pulse_space(const SignVector& u, const DiscretizationParams& params) {
  require_family(u, Family::pulse, "pulse_space");
  require_depth(u, params);
  auto g = pulse_grid(params);
  PlanarCoordsd c(static_cast<Eigen::Index>(g.xs.size()), 2);
  for (std::size_t i = 0; i < g.xs.size(); ++i) {
    const auto r = static_cast<Eigen::Index>(i);
    c(r, 0) = g.xs[i];
    c(r, 1) = pulse_height(u, g.xs[i], params.slope);
  }
  std::string name = "Y_" + u.str();
  if (params.slope != 1.0) name += "_eps" + std::to_string(params.slope);
  return FiniteMetricSpace::from_coords(std::move(name), std::move(g.labels), std::move(c));
}

FiniteMetricSpace segment_space(const DiscretizationParams& params) {
  auto g = pulse_grid(params);
  const auto n = static_cast<Eigen::Index>(g.xs.size());
  PlanarCoordsd c = PlanarCoordsd::Zero(n, 2);
  c.col(0) = Eigen::Map<const Eigen::VectorXd>(g.xs.data(), n);
  DistanceMatrixd d = line_distances(c.col(0));
  return FiniteMetricSpace("segment_N" + std::to_string(params.depth) + "_k" + std::to_string(params.samples_per_block),
                           std::move(g.labels), std::move(d), std::move(c));
}

PointMap projection_map(const SignVector& u, const DiscretizationParams& params) {
  auto source = pulse_space(u, params);
  auto target = segment_space(params);
  return PointMap(source, target, PointMap::identity(source).perm());
}

}  // namespace lipdist

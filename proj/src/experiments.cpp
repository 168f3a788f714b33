#include "lipdist/experiments.hpp"

#include <algorithm>
#include <random>
#include <set>

namespace lipdist {

namespace {

double pow2(int e) { return std::ldexp(1.0, e); }

FixtureCheck make_check(std::string name, int n, double expected, double measured) {
  FixtureCheck c;
  c.name = std::move(name);
  c.n = n;
  c.expected = expected;
  c.measured = measured;
  c.rel_error = std::abs(measured - expected) / std::abs(expected);
  c.pass = c.rel_error <= kFixtureRelTol;
  return c;
}

/// Sign vector of length `depth` with pulses exactly at `blocks`.
SignVector pulses_at(int depth, std::initializer_list<int> blocks) {
  std::vector<int> e(static_cast<std::size_t>(depth), 0);
  for (int b : blocks) e.at(static_cast<std::size_t>(b - 1)) = 1;
  return SignVector(Family::pulse, std::move(e));
}

FamilyReport run_family(const ExperimentConfig& cfg, std::vector<FiniteMetricSpace> spaces, double threshold) {
  FamilyReport rep;
  rep.config = cfg;
  rep.threshold = threshold;
  for (const auto& s : spaces) {
    rep.sizes.push_back(s.size());
    rep.diagonal.push_back(exact_distance(s, s, cfg.budget).value);
  }
  SeparationOptions opts;
  opts.budget = cfg.budget;
  opts.escalation = Escalation::always;
  opts.naive_check = cfg.naive_check;
  opts.threads = cfg.threads;
  rep.separation = certify_separation(spaces, threshold, opts, to_string(cfg.family));
  return rep;
}

}  // namespace

double projection_cost_bound(double eps) { return 0.5 * std::log1p(eps * eps); }

void ExperimentConfig::validate() const {
  if (depth < 1) throw std::invalid_argument("depth N must be at least 1");
  if (samples < 2) throw std::invalid_argument("samples k must be at least 2");
  if (random_count < 1) throw std::invalid_argument("random sample count must be positive");
  if (slopes.empty()) throw std::invalid_argument("slope list is empty");
  for (double e : slopes) {
    if (!(e > 0.0 && e <= 1.0)) throw std::invalid_argument("slopes must lie in (0, 1]");
  }
  if (enumeration == Enumeration::exhaustive && depth > 4) {
    throw std::invalid_argument("exhaustive enumeration is limited to 16 spaces (N <= 4); use random mode");
  }
}

std::vector<SignVector> select_sign_vectors(const ExperimentConfig& cfg) {
  cfg.validate();
  if (cfg.enumeration == Enumeration::exhaustive) return SignVector::enumerate(cfg.family, cfg.depth);

  const int lo = cfg.family == Family::interval ? 1 : 0;
  const double total = std::ldexp(1.0, cfg.depth);
  const auto count = static_cast<std::size_t>(std::min<double>(cfg.random_count, total));
  std::mt19937_64 rng(cfg.seed);
  std::set<std::vector<int>> picked;
  while (picked.size() < count) {
    std::vector<int> e(static_cast<std::size_t>(cfg.depth));
    for (auto& x : e) x = lo + static_cast<int>(rng() & 1u);
    picked.insert(std::move(e));
  }
  std::vector<SignVector> out;
  for (const auto& e : picked) out.emplace_back(cfg.family, e);
  return out;
}

FamilyReport lemma_ce_experiment(const ExperimentConfig& cfg) {
  if (cfg.family != Family::interval) throw std::invalid_argument("the ce experiment runs on the interval family");
  const auto members = select_sign_vectors(cfg);
  const DiscretizationParams params{cfg.depth, cfg.samples, 1.0};
  std::vector<FiniteMetricSpace> spaces;
  for (const auto& u : members) spaces.push_back(interval_space(u, params));

  auto rep = run_family(cfg, std::move(spaces), constants::interval_family_threshold);
  rep.experiment = "ce";
  rep.members = members;
  rep.family_bound = constants::interval_family_diameter;
  rep.bound_ok = true;
  for (const auto& e : rep.separation.pairs) {
    if (std::isfinite(e.upper) && e.upper > rep.family_bound + constants::bound_slack) rep.bound_ok = false;
  }
  return rep;
}

FamilyReport lemma_ce2_experiment(const ExperimentConfig& cfg) {
  if (cfg.family != Family::pulse) throw std::invalid_argument("the ce2 experiment runs on the pulse family");
  if (cfg.slopes.size() != 1 || cfg.slopes.front() != 1.0) {
    throw std::invalid_argument("the ce2 experiment uses slope eps = 1");
  }
  const auto members = select_sign_vectors(cfg);
  const DiscretizationParams params{cfg.depth, cfg.samples, 1.0};
  std::vector<FiniteMetricSpace> spaces;
  std::vector<ProjectionRow> projections;
  for (const auto& u : members) {
    spaces.push_back(pulse_space(u, params));
    ProjectionRow row;
    row.u = u.str();
    row.eps = 1.0;
    row.report = lipschitz_cost(projection_map(u, params));
    row.bound = constants::projection_bound;
    projections.push_back(row);
  }

  auto rep = run_family(cfg, std::move(spaces), constants::pulse_family_threshold);
  rep.experiment = "ce2";
  rep.members = members;
  rep.family_bound = constants::projection_bound;
  rep.projections = std::move(projections);
  rep.bound_ok = std::all_of(rep.projections.begin(), rep.projections.end(), [](const ProjectionRow& r) {
    return r.report.cost <= constants::projection_bound + constants::bound_slack;
  });
  return rep;
}

bool FixtureReport::all_pass() const {
  return !checks.empty() && std::all_of(checks.begin(), checks.end(), [](const FixtureCheck& c) { return c.pass; });
}

FixtureReport geometry_fixture_suite() {
  FixtureReport rep;
  for (int n = 1; n <= 3; ++n) {
    // Interval family: a homeomorphism that swaps blocks n and n+1 must send
    // 2^-(n+1) to an endpoint of block n and 2^-(n+2) to an endpoint of block
    // n+2 or n+3. The closest such pair sits 5/2 * 2^-(n+2) apart.
    {
      const int depth = n + 3;
      const DiscretizationParams params{depth, 2, 1.0};
      double closest = std::numeric_limits<double>::infinity();
      for (const auto& v : SignVector::enumerate(Family::interval, depth)) {
        const auto space = interval_space(v, params);
        const std::string images_a[] = {"b" + std::to_string(n) + ".s0", "b" + std::to_string(n) + ".s1"};
        const std::string images_b[] = {"b" + std::to_string(n + 2) + ".s0", "b" + std::to_string(n + 2) + ".s1",
                                        "b" + std::to_string(n + 3) + ".s0", "b" + std::to_string(n + 3) + ".s1"};
        for (const auto& a : images_a) {
          for (const auto& b : images_b) closest = std::min(closest, space.distance(space.index_of(a), space.index_of(b)));
        }
      }
      rep.checks.push_back(make_check("displacement_bound", n, 2.5 * pow2(-(n + 2)), closest));

      const auto ones = interval_space(SignVector(Family::interval, std::vector<int>(static_cast<std::size_t>(depth), 1)), params);
      const double source = ones.distance(ones.index_of("b" + std::to_string(n + 1) + ".s0"),
                                          ones.index_of("b" + std::to_string(n + 2) + ".s0"));
      rep.checks.push_back(make_check("displacement_ratio", n, 2.5, closest / source));
    }

    // Pulse geometry of block n with slope 1.
    {
      const DiscretizationParams params{n + 1, 5, 1.0};
      const auto y = pulse_space(pulses_at(n + 1, {n}), params);
      const int left = y.index_of(pulse_label(n, 0, 0));
      const int peak = y.index_of(pulse_label(n, 1, 0));
      const int foot = y.index_of(pulse_label(n, 2, 0));
      const double leg = std::sqrt(2.0) * pow2(-(n + 2));
      rep.checks.push_back(make_check("peak_distance", n, leg, y.distance(left, peak)));
      rep.checks.push_back(make_check("peak_leg_symmetry", n, leg, y.distance(peak, foot)));
      rep.checks.push_back(make_check("right_triangle_hypotenuse", n, std::sqrt(2.0) * y.distance(left, peak),
                                      y.distance(left, foot)));
      const double x0 = (*y.coords())(left, 0);
      for (int j = 1; j <= 3; ++j) {
        const int p = y.index_of(pulse_label(n, 0, j));
        const double x = (*y.coords())(p, 0);
        rep.checks.push_back(make_check("rising_edge_s" + std::to_string(j), n, std::sqrt(2.0) * std::abs(x - x0),
                                        y.distance(left, p)));
      }

      // Straddle across the pulse's left end: (2^-n - d, 0) on the flat tail
      // of block n+1 and (2^-n + d, d) on the rising edge, d = 2^-(n+4).
      const double delta = pow2(-(n + 4));
      const int below = y.index_of(pulse_label(n + 1, 2, 3));
      const int above = y.index_of(pulse_label(n, 0, 1));
      const auto& c = *y.coords();
      const bool placed = c(below, 0) == pow2(-n) - delta && c(below, 1) == 0.0 && c(above, 0) == pow2(-n) + delta &&
                          c(above, 1) == delta;
      auto straddle = make_check("straddle_distance", n, std::sqrt(5.0) * delta, y.distance(below, above));
      straddle.pass = straddle.pass && placed;
      rep.checks.push_back(straddle);
    }
  }
  return rep;
}

double slope_for_radius(double radius) {
  if (!(radius > 0.0)) throw std::invalid_argument("radius must be positive");
  return std::min(1.0, std::sqrt(std::expm1(2.0 * radius)));
}

RemarkReport remark_ball_experiment(const SignVector& u, const std::vector<double>& slopes,
                                    const DiscretizationParams& params, std::optional<double> radius) {
  if (u.family() != Family::pulse) throw std::invalid_argument("the remark experiment needs a pulse sign vector");
  if (slopes.empty()) throw std::invalid_argument("slope list is empty");
  for (std::size_t i = 0; i < slopes.size(); ++i) {
    if (!(slopes[i] > 0.0 && slopes[i] <= 1.0)) throw std::invalid_argument("slopes must lie in (0, 1]");
    if (i > 0 && !(slopes[i] < slopes[i - 1])) throw std::invalid_argument("slopes must be strictly decreasing");
  }
  if (radius && !(*radius > 0.0)) throw std::invalid_argument("radius must be positive");

  RemarkReport rep;
  rep.u = u.str();
  rep.params = params;
  rep.radius = radius;
  for (double eps : slopes) {
    DiscretizationParams p = params;
    p.slope = eps;
    RemarkRow row;
    row.eps = eps;
    row.report = lipschitz_cost(projection_map(u, p));
    row.bound = projection_cost_bound(eps);
    if (radius) row.inside_ball = row.report.cost < *radius;
    if (row.report.cost > row.bound + constants::bound_slack) rep.bounded = false;
    if (!rep.rows.empty() && !(row.report.cost < rep.rows.back().report.cost)) rep.monotone = false;
    rep.rows.push_back(row);
  }
  return rep;
}

}  // namespace lipdist

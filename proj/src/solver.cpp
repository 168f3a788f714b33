#include "lipdist/solver.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <numeric>
#include <random>
#include <thread>

namespace lipdist {

namespace {

using Clock = std::chrono::steady_clock;
constexpr double kInf = std::numeric_limits<double>::infinity();

/// Cost lower bound implied by forward/inverse ratio maxima that can only grow.
double bound_from_maxima(double fwd, double inv) {
  return std::log(std::max(fwd, 1.0)) + std::log(std::max(inv, 1.0));
}

double cost_from_maxima(double fwd, double inv) { return std::abs(std::log(fwd)) + std::abs(std::log(inv)); }

/// Ratio maxima of the sorted matching between two equally sized multisets.
/// Both inputs are sorted in place.
void fold_spectrum(std::vector<double>& sx, std::vector<double>& sy, double& fwd, double& inv) {
  std::sort(sx.begin(), sx.end());
  std::sort(sy.begin(), sy.end());
  for (std::size_t i = 0; i < sx.size(); ++i) {
    fwd = std::max(fwd, sy[i] / sx[i]);
    inv = std::max(inv, sx[i] / sy[i]);
  }
}

/// |log F| + |log B| for a full permutation, with the same quotients that
/// lipschitz_cost evaluates.
double permutation_cost(const DistanceMatrixd& dx, const DistanceMatrixd& dy, const Permutation& p) {
  const int n = static_cast<int>(p.size());
  if (n < 2) return 0.0;
  double fwd = 0.0;
  double inv = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      const double a = dx(i, j);
      const double b = dy(p[i], p[j]);
      fwd = std::max(fwd, b / a);
      inv = std::max(inv, a / b);
    }
  }
  return cost_from_maxima(fwd, inv);
}

std::vector<int> eccentricity_order(const DistanceMatrixd& d) {
  const auto ecc = eccentricities(d);
  std::vector<int> order(static_cast<std::size_t>(d.rows()));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) { return ecc(a) > ecc(b); });
  return order;
}

class BranchAndBound {
 public:
  BranchAndBound(const DistanceMatrixd& dx, const DistanceMatrixd& dy, const SearchBudget& budget,
                 Clock::time_point start)
      : dx_(dx), dy_(dy), n_(static_cast<int>(dx.rows())), budget_(budget), start_(start) {
    target_of_.assign(static_cast<std::size_t>(n_), -1);
    used_.assign(static_cast<std::size_t>(n_), 0);
  }

  struct Outcome {
    bool complete = true;
    double incumbent = kInf;
    Permutation best;
    double frontier_min = kInf;
    std::uint64_t nodes = 0;
  };

  /// Minimizes the cost, starting from a known feasible incumbent.
  Outcome minimize(double incumbent, Permutation best) {
    mode_ = Mode::minimize;
    order_ = eccentricity_order(dx_);
    build_candidates(/*by_index=*/false);
    out_ = Outcome{};
    out_.incumbent = incumbent;
    out_.best = std::move(best);
    search(0, 0.0, 0.0);
    out_.complete = !aborted_;
    return out_;
  }

  /// Lexicographically smallest permutation with cost <= target + slack.
  Outcome first_within(double target) {
    mode_ = Mode::first_within;
    target_ = target;
    order_.resize(static_cast<std::size_t>(n_));
    std::iota(order_.begin(), order_.end(), 0);
    build_candidates(/*by_index=*/true);
    out_ = Outcome{};
    found_ = false;
    search(0, 0.0, 0.0);
    out_.complete = found_ || !aborted_;
    return out_;
  }

 private:
  enum class Mode { minimize, first_within };

  void build_candidates(bool by_index) {
    candidates_.assign(static_cast<std::size_t>(n_), {});
    const auto ex = eccentricities(dx_);
    const auto ey = eccentricities(dy_);
    for (int s = 0; s < n_; ++s) {
      auto& c = candidates_[static_cast<std::size_t>(s)];
      c.resize(static_cast<std::size_t>(n_));
      std::iota(c.begin(), c.end(), 0);
      if (!by_index) {
        std::stable_sort(c.begin(), c.end(), [&](int a, int b) {
          return std::abs(std::log(ey(a) / ex(s))) < std::abs(std::log(ey(b) / ex(s)));
        });
      }
    }
  }

  bool prune(double lb) const {
    return mode_ == Mode::minimize ? lb >= out_.incumbent - kSearchSlack : lb > target_ + kSearchSlack;
  }

  bool done() const { return aborted_ || found_; }

  bool out_of_budget() {
    if (budget_.max_nodes && out_.nodes >= *budget_.max_nodes) return true;
    if (budget_.max_seconds && (out_.nodes & 255u) == 0) {
      const std::chrono::duration<double> el = Clock::now() - start_;
      if (el.count() >= *budget_.max_seconds) return true;
    }
    return false;
  }

  /// Running maxima after adding source s -> target t at `depth`.
  void extend(int depth, int s, int t, double& fwd, double& inv) const {
    for (int d = 0; d < depth; ++d) {
      const int a = order_[static_cast<std::size_t>(d)];
      const int b = target_of_[static_cast<std::size_t>(a)];
      const double px = dx_(s, a);
      const double py = dy_(t, b);
      fwd = std::max(fwd, py / px);
      inv = std::max(inv, px / py);
    }
  }

  /// Lower bound on every completion of the current partial assignment
  /// (first `depth` sources of order_ assigned).
  double residual_bound(int depth, double fwd, double inv) {
    const int rest = n_ - depth;
    free_src_.clear();
    free_tgt_.clear();
    for (int d = depth; d < n_; ++d) free_src_.push_back(order_[static_cast<std::size_t>(d)]);
    for (int t = 0; t < n_; ++t) {
      if (!used_[static_cast<std::size_t>(t)]) free_tgt_.push_back(t);
    }
    if (rest >= 1) {
      for (int d = 0; d < depth; ++d) {
        const int a = order_[static_cast<std::size_t>(d)];
        const int b = target_of_[static_cast<std::size_t>(a)];
        sx_.clear();
        sy_.clear();
        for (int x : free_src_) sx_.push_back(dx_(a, x));
        for (int y : free_tgt_) sy_.push_back(dy_(b, y));
        fold_spectrum(sx_, sy_, fwd, inv);
        if (prune(bound_from_maxima(fwd, inv))) return bound_from_maxima(fwd, inv);
      }
    }
    if (rest >= 2) {
      sx_.clear();
      sy_.clear();
      for (std::size_t i = 0; i < free_src_.size(); ++i) {
        for (std::size_t j = i + 1; j < free_src_.size(); ++j) {
          sx_.push_back(dx_(free_src_[i], free_src_[j]));
          sy_.push_back(dy_(free_tgt_[i], free_tgt_[j]));
        }
      }
      fold_spectrum(sx_, sy_, fwd, inv);
    }
    return bound_from_maxima(fwd, inv);
  }

  /// Bound for assigning s -> t at `depth` without descending.
  double child_bound(int depth, int s, int t, double fwd, double inv) {
    extend(depth, s, t, fwd, inv);
    target_of_[static_cast<std::size_t>(s)] = t;
    used_[static_cast<std::size_t>(t)] = 1;
    const double lb = std::max(bound_from_maxima(fwd, inv), residual_bound(depth + 1, fwd, inv));
    target_of_[static_cast<std::size_t>(s)] = -1;
    used_[static_cast<std::size_t>(t)] = 0;
    return lb;
  }

  void fold_remaining(int depth, int s, std::size_t from, double fwd, double inv) {
    const auto& cands = candidates_[static_cast<std::size_t>(s)];
    for (std::size_t c = from; c < cands.size(); ++c) {
      const int t = cands[c];
      if (used_[static_cast<std::size_t>(t)]) continue;
      out_.frontier_min = std::min(out_.frontier_min, child_bound(depth, s, t, fwd, inv));
    }
  }

  void leaf(double fwd, double inv) {
    const double cost = n_ < 2 ? 0.0 : cost_from_maxima(fwd, inv);
    Permutation p(target_of_.begin(), target_of_.end());
    if (mode_ == Mode::minimize) {
      if (cost < out_.incumbent) {
        out_.incumbent = cost;
        out_.best = std::move(p);
      }
    } else if (cost <= target_ + kSearchSlack) {
      out_.incumbent = cost;
      out_.best = std::move(p);
      found_ = true;
    }
  }

  void search(int depth, double fwd, double inv) {
    if (depth == n_) {
      leaf(fwd, inv);
      return;
    }
    const int s = order_[static_cast<std::size_t>(depth)];
    const auto& cands = candidates_[static_cast<std::size_t>(s)];
    for (std::size_t c = 0; c < cands.size(); ++c) {
      const int t = cands[c];
      if (used_[static_cast<std::size_t>(t)]) continue;
      if (out_of_budget()) {
        aborted_ = true;
        fold_remaining(depth, s, c, fwd, inv);
        return;
      }
      ++out_.nodes;
      double f = fwd;
      double b = inv;
      extend(depth, s, t, f, b);
      if (prune(bound_from_maxima(f, b))) continue;
      target_of_[static_cast<std::size_t>(s)] = t;
      used_[static_cast<std::size_t>(t)] = 1;
      if (!prune(residual_bound(depth + 1, f, b))) search(depth + 1, f, b);
      target_of_[static_cast<std::size_t>(s)] = -1;
      used_[static_cast<std::size_t>(t)] = 0;
      if (found_) return;
      if (aborted_) {
        fold_remaining(depth, s, c + 1, fwd, inv);
        return;
      }
    }
  }

  const DistanceMatrixd& dx_;
  const DistanceMatrixd& dy_;
  int n_;
  SearchBudget budget_;
  Clock::time_point start_;

  Mode mode_ = Mode::minimize;
  double target_ = 0.0;
  bool aborted_ = false;
  bool found_ = false;
  Outcome out_;

  std::vector<int> order_;
  std::vector<std::vector<int>> candidates_;
  std::vector<int> target_of_;
  std::vector<char> used_;

  std::vector<int> free_src_, free_tgt_;
  std::vector<double> sx_, sy_;
};

}  // namespace

const char* to_string(Status status) {
  switch (status) {
    case Status::exact: return "exact";
    case Status::bracketed: return "bracketed";
    case Status::infinite: return "infinite";
  }
  return "unknown";
}

double spectrum_lower_bound(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  if (x.size() != y.size()) {
    throw std::invalid_argument("spectrum bound needs equal sizes (" + std::to_string(x.size()) + " vs " +
                                std::to_string(y.size()) + ")");
  }
  auto sx = distance_spectrum(x.distances());
  auto sy = distance_spectrum(y.distances());
  double fwd = 0.0;
  double inv = 0.0;
  fold_spectrum(sx, sy, fwd, inv);
  return bound_from_maxima(fwd, inv);
}

UpperBound local_search_upper_bound(const FiniteMetricSpace& x, const FiniteMetricSpace& y, int restarts,
                                    std::uint64_t seed) {
  if (x.size() != y.size()) throw std::invalid_argument("local search needs spaces of equal size");
  const auto& dx = x.distances();
  const auto& dy = y.distances();
  const int n = x.size();
  const auto src = eccentricity_order(dx);
  const auto tgt = eccentricity_order(dy);

  Permutation best(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) best[static_cast<std::size_t>(src[static_cast<std::size_t>(i)])] = tgt[static_cast<std::size_t>(i)];

  auto hill_climb = [&](Permutation& p) {
    double cur = permutation_cost(dx, dy, p);
    for (;;) {
      double best_cost = cur;
      int bi = -1;
      int bj = -1;
      for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
          std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
          const double c = permutation_cost(dx, dy, p);
          std::swap(p[static_cast<std::size_t>(i)], p[static_cast<std::size_t>(j)]);
          if (c < best_cost) {
            best_cost = c;
            bi = i;
            bj = j;
          }
        }
      }
      if (bi < 0) return cur;
      std::swap(p[static_cast<std::size_t>(bi)], p[static_cast<std::size_t>(bj)]);
      cur = best_cost;
    }
  };

  double best_cost = hill_climb(best);
  std::mt19937_64 rng(seed);
  std::vector<std::pair<double, int>> scored;
  for (int r = 0; r < restarts && best_cost > 0.0; ++r) {
    Permutation p(static_cast<std::size_t>(n), -1);
    std::vector<char> used(static_cast<std::size_t>(n), 0);
    for (int d = 0; d < n; ++d) {
      const int s = src[static_cast<std::size_t>(d)];
      scored.clear();
      for (int t = 0; t < n; ++t) {
        if (used[static_cast<std::size_t>(t)]) continue;
        double fwd = 0.0;
        double inv = 0.0;
        for (int e = 0; e < d; ++e) {
          const int a = src[static_cast<std::size_t>(e)];
          const double px = dx(s, a);
          const double py = dy(t, p[static_cast<std::size_t>(a)]);
          fwd = std::max(fwd, py / px);
          inv = std::max(inv, px / py);
        }
        scored.emplace_back(d == 0 ? 0.0 : bound_from_maxima(fwd, inv), t);
      }
      std::sort(scored.begin(), scored.end());
      const auto width = std::min<std::size_t>(3, scored.size());
      const int t = scored[static_cast<std::size_t>(rng() % width)].second;
      p[static_cast<std::size_t>(s)] = t;
      used[static_cast<std::size_t>(t)] = 1;
    }
    const double c = hill_climb(p);
    if (c < best_cost) {
      best_cost = c;
      best = std::move(p);
    }
  }
  PointMap map(x, y, std::move(best));
  const double value = lipschitz_cost(map).cost;
  return {value, std::move(map)};
}

LipschitzResult exact_distance(const FiniteMetricSpace& x, const FiniteMetricSpace& y, const SearchBudget& budget) {
  const auto start = Clock::now();
  LipschitzResult r;
  auto finish = [&]() -> LipschitzResult {
    r.elapsed = Clock::now() - start;
    return std::move(r);
  };

  if (x.size() != y.size()) {
    r.status = Status::infinite;
    r.value = r.lower = r.upper = kInf;
    return finish();
  }
  require_metric(x);
  require_metric(y);

  if (x.size() < 2) {
    r.best_map = PointMap(x, y, Permutation(static_cast<std::size_t>(x.size()), 0));
    r.status = Status::exact;
    return finish();
  }

  const double spectral = spectrum_lower_bound(x, y);
  auto ub = local_search_upper_bound(x, y);

  if (budget.is_zero()) {
    r.status = Status::bracketed;
    r.upper = r.value = ub.value;
    r.lower = std::min(spectral, ub.value);
    r.best_map = std::move(ub.map);
    return finish();
  }

  BranchAndBound search(x.distances(), y.distances(), budget, start);
  auto value_pass = search.minimize(ub.value, ub.map.perm());
  r.nodes_explored = value_pass.nodes;

  if (!value_pass.complete) {
    r.status = Status::bracketed;
    r.best_map = PointMap(x, y, value_pass.best);
    r.upper = r.value = lipschitz_cost(*r.best_map).cost;
    r.lower = std::min(r.upper, std::max(spectral, std::min(value_pass.frontier_min, value_pass.incumbent)));
    return finish();
  }

  BranchAndBound ties(x.distances(), y.distances(), budget, start);
  auto lex_pass = ties.first_within(value_pass.incumbent);
  r.nodes_explored += lex_pass.nodes;
  if (lex_pass.complete) {
    r.best_map = PointMap(x, y, std::move(lex_pass.best));
  } else {
    r.best_map = PointMap(x, y, std::move(value_pass.best));
    r.canonical_map = false;
  }
  r.status = Status::exact;
  r.value = r.lower = r.upper = lipschitz_cost(*r.best_map).cost;
  return finish();
}

double naive_distance(const FiniteMetricSpace& x, const FiniteMetricSpace& y) {
  if (x.size() != y.size()) return kInf;
  if (x.size() > kNaiveMaxPoints) {
    throw std::invalid_argument("naive enumeration is capped at " + std::to_string(kNaiveMaxPoints) + " points, got " +
                                std::to_string(x.size()));
  }
  Permutation p(static_cast<std::size_t>(x.size()));
  std::iota(p.begin(), p.end(), 0);
  double best = kInf;
  do {
    best = std::min(best, lipschitz_cost(PointMap(x, y, p)).cost);
  } while (std::next_permutation(p.begin(), p.end()));
  return best;
}

SeparationReport certify_separation(const std::vector<FiniteMetricSpace>& spaces, double threshold,
                                    const SeparationOptions& options, std::string family) {
  SeparationReport rep;
  rep.family = std::move(family);
  rep.threshold = threshold;
  for (const auto& s : spaces) rep.names.push_back(s.name());

  const int m = static_cast<int>(spaces.size());
  for (int a = 0; a < m; ++a) {
    for (int b = a + 1; b < m; ++b) {
      PairEntry e;
      e.a = a;
      e.b = b;
      e.name_a = spaces[static_cast<std::size_t>(a)].name();
      e.name_b = spaces[static_cast<std::size_t>(b)].name();
      rep.pairs.push_back(std::move(e));
    }
  }

  auto run = [&](PairEntry& e) {
    const auto& x = spaces[static_cast<std::size_t>(e.a)];
    const auto& y = spaces[static_cast<std::size_t>(e.b)];
    if (x.size() != y.size()) {
      e.status = Status::infinite;
      e.spectrum_bound = e.lower = e.upper = kInf;
      return;
    }
    e.spectrum_bound = spectrum_lower_bound(x, y);
    if (options.escalation == Escalation::always || e.spectrum_bound < threshold) {
      auto r = exact_distance(x, y, options.budget);
      e.status = r.status;
      e.lower = r.lower;
      e.upper = r.upper;
      e.nodes = r.nodes_explored;
      if (r.best_map) e.best_perm = r.best_map->perm();
      if (options.naive_check && r.status == Status::exact && x.size() <= kNaiveMaxPoints) {
        e.naive_value = naive_distance(x, y);
      }
    } else {
      auto ub = local_search_upper_bound(x, y);
      e.lower = e.spectrum_bound;
      e.upper = ub.value;
      e.best_perm = ub.map.perm();
    }
    if (e.status == Status::exact) {
      e.below_threshold = e.upper < threshold;
    } else if (e.status == Status::bracketed) {
      e.below_threshold = e.lower < threshold;
    }
  };

  const int threads = std::max(1, std::min<int>(options.threads, static_cast<int>(rep.pairs.size())));
  if (threads <= 1) {
    for (auto& e : rep.pairs) run(e);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(threads));
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          for (std::size_t i = next++; i < rep.pairs.size(); i = next++) run(rep.pairs[i]);
        } catch (...) {
          errors[static_cast<std::size_t>(w)] = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    for (auto& err : errors) {
      if (err) std::rethrow_exception(err);
    }
  }

  for (const auto& e : rep.pairs) {
    rep.min_gap = rep.min_gap ? std::min(*rep.min_gap, e.lower) : e.lower;
    if (std::isfinite(e.upper)) rep.max_value = rep.max_value ? std::max(*rep.max_value, e.upper) : e.upper;
    if (e.below_threshold) rep.below_threshold.emplace_back(e.a, e.b);
    if (e.naive_value && std::abs(*e.naive_value - e.upper) > kSearchSlack) rep.naive_agrees = false;
  }
  return rep;
}

}  // namespace lipdist

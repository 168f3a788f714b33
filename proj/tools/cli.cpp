#include "lipdist/cli.hpp"

#include "lipdist/constructions.hpp"
#include "lipdist/experiments.hpp"
#include "lipdist/io.hpp"
#include "lipdist/solver.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <iostream>

namespace lipdist::cli {

namespace {

namespace fs = std::filesystem;

struct BudgetFlags {
  std::optional<std::uint64_t> nodes;
  std::optional<double> seconds;

  void attach(CLI::App* app) {
    app->add_option("--budget-nodes", nodes, "Maximum number of search nodes");
    app->add_option("--budget-seconds", seconds, "Maximum search time in seconds");
  }
  SearchBudget budget() const { return {nodes, seconds}; }
};

int print_violations(const FiniteMetricSpace& s, std::ostream& err) {
  const auto v = validate_metric(s);
  if (v.empty()) return kOk;
  err << "space '" << s.name() << "' is invalid (" << v.size() << " violation" << (v.size() == 1 ? "" : "s")
      << "):\n";
  for (const auto& x : v) err << "  " << to_string(x.axiom) << ": " << x.message << "\n";
  return kInvalid;
}

int exit_code_for(Status s) {
  switch (s) {
    case Status::exact: return kOk;
    case Status::bracketed: return kBracketed;
    case Status::infinite: return kInfinite;
  }
  return kInvalid;
}

std::string headline_number(const std::optional<double>& x) {
  return x ? io::format_double(*x) : std::string("n/a");
}

void write_outputs(const fs::path& dir, const std::string& stem, const std::string& csv, const io::json& j,
                   std::ostream& out) {
  fs::create_directories(dir);
  io::write_text(dir / (stem + ".csv"), csv);
  io::write_text(dir / (stem + ".json"), j.dump(2) + "\n");
  out << "wrote " << (dir / (stem + ".csv")).string() << " and " << (dir / (stem + ".json")).string() << "\n";
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Lipschitz distance between finite metric spaces", "lipdist"};
  app.require_subcommand(1);

  // build
  auto* build = app.add_subcommand("build", "Construct a member of the interval or pulse family");
  std::string family_name = "interval";
  std::string u_string;
  std::optional<int> depth;
  int samples = 2;
  double slope = 1.0;
  std::string build_out;
  build->add_option("family", family_name, "interval or pulse")->required();
  build->add_option("--u", u_string, "Sign vector digits, e.g. 121 or 0101")->required();
  build->add_option("--N", depth, "Depth (defaults to the length of u)");
  build->add_option("--k", samples, "Samples per block (interval) or per linear piece (pulse)");
  build->add_option("--eps", slope, "Pulse slope in (0, 1]");
  build->add_option("--out", build_out, "Output space file")->required();

  // validate
  auto* validate = app.add_subcommand("validate", "Check the metric axioms of a space file");
  std::string validate_path;
  validate->add_option("space", validate_path)->required();

  // dilation
  auto* dil = app.add_subcommand("dilation", "Distortion of a map file between two space files");
  std::string map_path, map_source, map_target;
  dil->add_option("map", map_path)->required();
  dil->add_option("source", map_source)->required();
  dil->add_option("target", map_target)->required();

  // dist / bound
  auto* dist = app.add_subcommand("dist", "Lipschitz distance between two space files");
  std::string dist_a, dist_b, mode = "exact";
  BudgetFlags dist_budget;
  dist->add_option("a", dist_a)->required();
  dist->add_option("b", dist_b)->required();
  dist->add_option("--mode", mode, "exact or bound")->check(CLI::IsMember({"exact", "bound"}));
  dist_budget.attach(dist);

  auto* bound = app.add_subcommand("bound", "Spectrum lower bound and local-search upper bound");
  std::string bound_a, bound_b;
  bound->add_option("a", bound_a)->required();
  bound->add_option("b", bound_b)->required();

  // experiment
  auto* exp = app.add_subcommand("experiment", "Run one of: ce, ce2, remark, fixtures");
  std::string exp_name;
  std::optional<int> exp_depth;
  std::optional<int> exp_samples;
  std::vector<double> exp_slopes;
  std::uint64_t exp_seed = 0;
  std::optional<std::string> exp_mode;
  int exp_count = 8;
  std::string exp_out = ".";
  std::string exp_u = "101";
  std::optional<double> exp_radius;
  int exp_threads = 1;
  BudgetFlags exp_budget;
  exp->add_option("name", exp_name, "ce | ce2 | remark | fixtures")->required();
  exp->add_option("--N", exp_depth, "Depth of the family");
  exp->add_option("--k", exp_samples, "Samples per block or piece");
  exp->add_option("--eps", exp_slopes, "Comma-separated slopes (remark)")->delimiter(',');
  exp->add_option("--seed", exp_seed, "Seed for random sign-vector sampling");
  exp->add_option("--mode", exp_mode, "exhaustive or random")->check(CLI::IsMember({"exhaustive", "random"}));
  exp->add_option("--count", exp_count, "Number of sign vectors in random mode");
  exp->add_option("--u", exp_u, "Sign vector for the remark experiment");
  exp->add_option("--radius", exp_radius, "Ball radius reported by the remark experiment");
  exp->add_option("--threads", exp_threads, "Worker threads for pairwise distances");
  exp->add_option("--out", exp_out, "Output directory");
  exp_budget.attach(exp);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "usage error: " << e.what() << "\n";
    return kInvalid;
  }

  try {
    if (*build) {
      Family family;
      try {
        family = parse_family(family_name);
      } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << "\n";
        return kInvalid;
      }
      std::optional<SignVector> u;
      try {
        u = SignVector::parse(family, u_string);
      } catch (const SignVectorError& e) {
        err << "usage error: " << e.what() << "\n";
        return kInvalid;
      }
      DiscretizationParams params{depth.value_or(u->size()), samples, slope};
      if (u->size() != params.depth) {
        err << "usage error: u has length " << u->size() << " but --N is " << params.depth << "\n";
        return kInvalid;
      }
      params.validate();
      auto space = family == Family::interval ? interval_space(*u, params) : pulse_space(*u, params);
      io::write_space_file(build_out, {space, io::Provenance{family, u->str(), params.depth, samples, params.slope}});
      out << "points: " << space.size() << "\n";
      out << "diameter: " << io::format_double(diameter(space.distances())) << "\n";
      return kOk;
    }

    if (*validate) {
      const auto file = io::read_space_file(validate_path);
      const int rc = print_violations(file.space, err);
      if (rc == kOk) out << "valid: " << file.space.name() << " (" << file.space.size() << " points)\n";
      return rc;
    }

    if (*dil) {
      const auto m = io::read_map_file(map_path);
      const auto src = io::read_space_file(map_source).space;
      const auto tgt = io::read_space_file(map_target).space;
      if (int rc = print_violations(src, err); rc != kOk) return rc;
      if (int rc = print_violations(tgt, err); rc != kOk) return rc;
      if (m.source != src.name() || m.target != tgt.name()) {
        err << "map is between '" << m.source << "' and '" << m.target << "', not '" << src.name() << "' and '"
            << tgt.name() << "'\n";
        return kInvalid;
      }
      const PointMap map(src, tgt, m.perm);
      out << io::to_json(lipschitz_cost(map)).dump(2) << "\n";
      return kOk;
    }

    if (*dist || *bound) {
      const bool bound_only = *bound || mode == "bound";
      const auto a = io::read_space_file(*bound ? bound_a : dist_a).space;
      const auto b = io::read_space_file(*bound ? bound_b : dist_b).space;
      if (int rc = print_violations(a, err); rc != kOk) return rc;
      if (int rc = print_violations(b, err); rc != kOk) return rc;
      SearchBudget budget = bound_only ? SearchBudget{0, std::nullopt} : dist_budget.budget();
      const auto r = exact_distance(a, b, budget);
      out << io::to_json(r).dump(2) << "\n";
      return exit_code_for(r.status);
    }

    if (*exp) {
      const fs::path dir = exp_out;
      if (exp_name == "fixtures") {
        const auto rep = geometry_fixture_suite();
        for (const auto& c : rep.checks) {
          out << (c.pass ? "PASS " : "FAIL ") << c.name << " n=" << c.n << " expected=" << io::format_double(c.expected)
              << " measured=" << io::format_double(c.measured) << "\n";
        }
        write_outputs(dir, "fixtures", io::to_csv(rep), io::to_json(rep), out);
        return rep.all_pass() ? kOk : kInvalid;
      }
      if (exp_name == "remark") {
        const auto u = SignVector::parse(Family::pulse, exp_u);
        DiscretizationParams params{exp_depth.value_or(u.size()), exp_samples.value_or(2), 1.0};
        const auto slopes = exp_slopes.empty() ? std::vector<double>{1.0, 0.5, 0.25, 0.125} : exp_slopes;
        const auto rep = remark_ball_experiment(u, slopes, params, exp_radius);
        for (const auto& row : rep.rows) {
          out << "eps=" << io::format_double(row.eps) << " cost=" << io::format_double(row.report.cost)
              << " bound=" << io::format_double(row.bound) << "\n";
        }
        if (exp_radius) {
          out << "slope needed for radius " << io::format_double(*exp_radius) << ": "
              << io::format_double(slope_for_radius(*exp_radius)) << "\n";
        }
        out << "monotone: " << (rep.monotone ? "yes" : "no") << ", bounded: " << (rep.bounded ? "yes" : "no") << "\n";
        write_outputs(dir, "remark", io::to_csv(rep), io::to_json(rep), out);
        return rep.monotone && rep.bounded ? kOk : kInvalid;
      }
      if (exp_name == "ce" || exp_name == "ce2") {
        ExperimentConfig cfg;
        cfg.family = exp_name == "ce" ? Family::interval : Family::pulse;
        cfg.depth = exp_depth.value_or(3);
        cfg.samples = exp_samples.value_or(2);
        cfg.enumeration = exp_mode ? (*exp_mode == "random" ? Enumeration::random : Enumeration::exhaustive)
                                   : (cfg.depth <= 4 ? Enumeration::exhaustive : Enumeration::random);
        cfg.random_count = exp_count;
        cfg.seed = exp_seed;
        cfg.budget = exp_budget.budget();
        cfg.threads = exp_threads;
        const auto rep = exp_name == "ce" ? lemma_ce_experiment(cfg) : lemma_ce2_experiment(cfg);
        const auto& sep = rep.separation;
        out << "spaces: " << rep.members.size() << ", pairs: " << sep.pairs.size() << "\n";
        out << "max_value: " << headline_number(sep.max_value) << "\n";
        out << "min_gap: " << headline_number(sep.min_gap) << "\n";
        out << "threshold: " << io::format_double(rep.threshold) << "\n";
        out << (exp_name == "ce" ? "family bound (2 log 2): " : "projection bound (1/2 log 2): ")
            << io::format_double(rep.family_bound) << " " << (rep.bound_ok ? "ok" : "VIOLATED") << "\n";
        out << "below threshold: " << sep.below_threshold.size() << " pair(s)\n";
        write_outputs(dir, exp_name, io::to_csv(rep), io::to_json(rep), out);
        return rep.bound_ok ? kOk : kInvalid;
      }
      err << "usage error: unknown experiment '" << exp_name << "' (valid names: ce, ce2, remark, fixtures)\n";
      return kInvalid;
    }
  } catch (const io::FormatError& e) {
    err << "invalid input: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::invalid_argument& e) {
    err << "invalid argument: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kInvalid;
}

}  // namespace lipdist::cli

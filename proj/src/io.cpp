#include "lipdist/io.hpp"

#include <fmt/format.h>

#include <cmath>
#include <fstream>
#include <sstream>

namespace lipdist::io {

namespace {

json number_or_inf(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return x;
}

json optional_number(const std::optional<double>& x) { return x ? number_or_inf(*x) : json(nullptr); }

void require_version(const json& j, const char* kind) {
  if (!j.is_object()) throw FormatError(std::string(kind) + " file must be a JSON object");
  const auto v = j.find("format_version");
  if (v == j.end() || !v->is_number_integer()) throw FormatError(std::string(kind) + " file lacks format_version");
  if (v->get<int>() != kFormatVersion) {
    throw FormatError(std::string(kind) + " file has format_version " + std::to_string(v->get<int>()) +
                      ", expected " + std::to_string(kFormatVersion));
  }
}

template <typename T>
T field(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end()) throw FormatError(std::string("missing field '") + key + "'");
  try {
    return it->get<T>();
  } catch (const json::exception& e) {
    throw FormatError(std::string("field '") + key + "': " + e.what());
  }
}

std::string perm_string(const Permutation& p) {
  std::string s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (i) s += ' ';
    s += std::to_string(p[i]);
  }
  return s;
}

std::string csv_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  return format_double(x);
}

}  // namespace

std::string format_double(double x) { return fmt::format("{:.17g}", x); }

json to_json(const SpaceFile& file) {
  const auto& s = file.space;
  json j;
  j["format_version"] = kFormatVersion;
  j["kind"] = "space";
  j["name"] = s.name();
  j["labels"] = s.labels();
  j["distances"] = upper_triangle(s.distances());
  if (const auto& c = s.coords()) {
    json coords = json::array();
    for (Eigen::Index i = 0; i < c->rows(); ++i) coords.push_back({(*c)(i, 0), (*c)(i, 1)});
    j["coords"] = std::move(coords);
  }
  if (const auto& p = file.provenance) {
    j["provenance"] = {{"family", to_string(p->family)},
                       {"sign_vector", p->sign_vector},
                       {"depth", p->depth},
                       {"samples", p->samples},
                       {"slope", p->slope}};
  }
  return j;
}

SpaceFile space_from_json(const json& j) {
  require_version(j, "space");
  auto name = field<std::string>(j, "name");
  auto labels = field<std::vector<std::string>>(j, "labels");
  auto packed = field<std::vector<double>>(j, "distances");
  const auto n = static_cast<Eigen::Index>(labels.size());
  if (packed.size() != static_cast<std::size_t>(n * (n - 1) / 2)) {
    throw FormatError("distance list has " + std::to_string(packed.size()) + " entries, expected " +
                      std::to_string(n * (n - 1) / 2) + " for " + std::to_string(n) + " points");
  }
  std::optional<PlanarCoordsd> coords;
  if (j.contains("coords")) {
    auto rows = field<std::vector<std::vector<double>>>(j, "coords");
    PlanarCoordsd c(static_cast<Eigen::Index>(rows.size()), 2);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != 2) throw FormatError("coordinate row " + std::to_string(i) + " is not a pair");
      c(static_cast<Eigen::Index>(i), 0) = rows[i][0];
      c(static_cast<Eigen::Index>(i), 1) = rows[i][1];
    }
    coords = std::move(c);
  }
  std::optional<Provenance> prov;
  if (j.contains("provenance")) {
    const auto& p = j.at("provenance");
    Provenance pr;
    try {
      pr.family = parse_family(field<std::string>(p, "family"));
    } catch (const std::invalid_argument& e) {
      throw FormatError(e.what());
    }
    pr.sign_vector = field<std::string>(p, "sign_vector");
    pr.depth = field<int>(p, "depth");
    pr.samples = field<int>(p, "samples");
    pr.slope = field<double>(p, "slope");
    prov = pr;
  }
  try {
    return {FiniteMetricSpace(std::move(name), std::move(labels), from_upper_triangle(n, packed), std::move(coords)),
            prov};
  } catch (const StructureError& e) {
    throw FormatError(e.what());
  }
}

json to_json(const MapFile& file) {
  return {{"format_version", kFormatVersion}, {"kind", "map"}, {"source", file.source}, {"target", file.target},
          {"perm", file.perm}};
}

MapFile map_from_json(const json& j) {
  require_version(j, "map");
  MapFile m;
  m.source = field<std::string>(j, "source");
  m.target = field<std::string>(j, "target");
  m.perm = field<Permutation>(j, "perm");
  return m;
}

json to_json(const DistortionReport& r) {
  return {{"dil_forward", r.dil_forward}, {"dil_inverse", r.dil_inverse}, {"cost", r.cost}};
}

json to_json(const LipschitzResult& r, bool include_time) {
  json j;
  j["format_version"] = kFormatVersion;
  j["status"] = to_string(r.status);
  switch (r.status) {
    case Status::exact: j["value"] = r.value; break;
    case Status::bracketed: j["bracket"] = {r.lower, r.upper}; break;
    case Status::infinite: j["value"] = "inf"; break;
  }
  j["best_map"] = r.best_map ? json(r.best_map->perm()) : json(nullptr);
  if (r.best_map) {
    j["source"] = r.best_map->source().name();
    j["target"] = r.best_map->target().name();
  }
  j["canonical_map"] = r.canonical_map;
  j["nodes"] = r.nodes_explored;
  if (include_time) j["time_seconds"] = r.elapsed.count();
  return j;
}

json to_json(const FamilyReport& r) {
  json j;
  j["format_version"] = kFormatVersion;
  j["experiment"] = r.experiment;
  j["family"] = to_string(r.config.family);
  j["config"] = {{"depth", r.config.depth},
                 {"samples", r.config.samples},
                 {"enumeration", r.config.enumeration == Enumeration::exhaustive ? "exhaustive" : "random"},
                 {"random_count", r.config.random_count},
                 {"seed", r.config.seed},
                 {"budget_nodes", r.config.budget.max_nodes ? json(*r.config.budget.max_nodes) : json(nullptr)},
                 {"budget_seconds", r.config.budget.max_seconds ? json(*r.config.budget.max_seconds) : json(nullptr)}};
  j["caption"] = r.caption;
  j["threshold"] = r.threshold;
  j["family_bound"] = r.family_bound;
  j["bound_ok"] = r.bound_ok;
  json members = json::array();
  for (const auto& u : r.members) members.push_back(u.str());
  j["members"] = std::move(members);
  j["sizes"] = r.sizes;
  j["diagonal"] = r.diagonal;

  const auto& sep = r.separation;
  json pairs = json::array();
  for (const auto& e : sep.pairs) {
    json p;
    p["u"] = r.members.at(static_cast<std::size_t>(e.a)).str();
    p["v"] = r.members.at(static_cast<std::size_t>(e.b)).str();
    p["status"] = e.status ? json(to_string(*e.status)) : json("spectrum");
    p["lower"] = number_or_inf(e.lower);
    p["upper"] = number_or_inf(e.upper);
    p["spectrum_bound"] = number_or_inf(e.spectrum_bound);
    p["naive"] = optional_number(e.naive_value);
    p["best_perm"] = e.best_perm ? json(*e.best_perm) : json(nullptr);
    p["nodes"] = e.nodes;
    p["below_threshold"] = e.below_threshold;
    pairs.push_back(std::move(p));
  }
  j["pairs"] = std::move(pairs);
  j["min_gap"] = optional_number(sep.min_gap);
  j["max_value"] = optional_number(sep.max_value);
  json below = json::array();
  for (const auto& [a, b] : sep.below_threshold) {
    below.push_back({r.members.at(static_cast<std::size_t>(a)).str(), r.members.at(static_cast<std::size_t>(b)).str()});
  }
  j["below_threshold"] = std::move(below);
  j["naive_agrees"] = sep.naive_agrees;

  if (!r.projections.empty()) {
    json proj = json::array();
    for (const auto& p : r.projections) {
      proj.push_back({{"u", p.u}, {"eps", p.eps}, {"distortion", to_json(p.report)}, {"bound", p.bound}});
    }
    j["projections"] = std::move(proj);
  }
  return j;
}

json to_json(const FixtureReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) {
    checks.push_back({{"name", c.name},
                      {"n", c.n},
                      {"expected", c.expected},
                      {"measured", c.measured},
                      {"rel_error", c.rel_error},
                      {"pass", c.pass}});
  }
  return {{"format_version", kFormatVersion},
          {"experiment", "fixtures"},
          {"tolerance", kFixtureRelTol},
          {"all_pass", r.all_pass()},
          {"checks", std::move(checks)}};
}

json to_json(const RemarkReport& r) {
  json rows = json::array();
  for (const auto& row : r.rows) {
    json o = {{"eps", row.eps}, {"distortion", to_json(row.report)}, {"bound", row.bound}};
    o["inside_ball"] = row.inside_ball ? json(*row.inside_ball) : json(nullptr);
    rows.push_back(std::move(o));
  }
  return {{"format_version", kFormatVersion},
          {"experiment", "remark"},
          {"caption", r.caption},
          {"u", r.u},
          {"depth", r.params.depth},
          {"samples", r.params.samples_per_block},
          {"radius", optional_number(r.radius)},
          {"monotone", r.monotone},
          {"bounded", r.bounded},
          {"rows", std::move(rows)}};
}

std::string to_csv(const FamilyReport& r) {
  std::ostringstream os;
  os << "# " << r.caption << "\n";
  os << "# format_version=" << kFormatVersion << " experiment=" << r.experiment
     << " threshold=" << format_double(r.threshold) << " bound=" << format_double(r.family_bound) << "\n";
  os << "u,v,size_u,size_v,status,lower,upper,spectrum_bound,naive,nodes,below_threshold,best_perm\n";
  const auto& sep = r.separation;
  const auto m = r.members.size();
  // Rows in lexicographic (u, v) order with the diagonal first in each block.
  for (std::size_t a = 0; a < m; ++a) {
    const auto& u = r.members[a].str();
    os << u << ',' << u << ',' << r.sizes[a] << ',' << r.sizes[a] << ",exact," << csv_number(r.diagonal[a]) << ','
       << csv_number(r.diagonal[a]) << ",,,0,false,\n";
    for (const auto& e : sep.pairs) {
      if (static_cast<std::size_t>(e.a) != a) continue;
      os << u << ',' << r.members[static_cast<std::size_t>(e.b)].str() << ',' << r.sizes[a] << ','
         << r.sizes[static_cast<std::size_t>(e.b)] << ',' << (e.status ? to_string(*e.status) : "spectrum") << ','
         << csv_number(e.lower) << ',' << csv_number(e.upper) << ',' << csv_number(e.spectrum_bound) << ','
         << (e.naive_value ? csv_number(*e.naive_value) : "") << ',' << e.nodes << ','
         << (e.below_threshold ? "true" : "false") << ',' << (e.best_perm ? perm_string(*e.best_perm) : "") << "\n";
    }
  }
  return os.str();
}

std::string to_csv(const FixtureReport& r) {
  std::ostringstream os;
  os << "name,n,expected,measured,rel_error,pass\n";
  for (const auto& c : r.checks) {
    os << c.name << ',' << c.n << ',' << format_double(c.expected) << ',' << format_double(c.measured) << ','
       << format_double(c.rel_error) << ',' << (c.pass ? "true" : "false") << "\n";
  }
  return os.str();
}

std::string to_csv(const RemarkReport& r) {
  std::ostringstream os;
  os << "# " << r.caption << "\n";
  os << "# u=" << r.u << " depth=" << r.params.depth << " samples=" << r.params.samples_per_block << "\n";
  os << "eps,dil_forward,dil_inverse,cost,bound,inside_ball\n";
  for (const auto& row : r.rows) {
    os << format_double(row.eps) << ',' << format_double(row.report.dil_forward) << ','
       << format_double(row.report.dil_inverse) << ',' << format_double(row.report.cost) << ','
       << format_double(row.bound) << ',' << (row.inside_ball ? (*row.inside_ball ? "true" : "false") : "") << "\n";
  }
  return os.str();
}

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw FormatError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

namespace {

json parse_json(const std::filesystem::path& path) {
  try {
    return json::parse(read_text(path));
  } catch (const json::parse_error& e) {
    throw FormatError(path.string() + ": " + e.what());
  }
}

}  // namespace

SpaceFile read_space_file(const std::filesystem::path& path) { return space_from_json(parse_json(path)); }

void write_space_file(const std::filesystem::path& path, const SpaceFile& file) {
  write_text(path, to_json(file).dump(2) + "\n");
}

MapFile read_map_file(const std::filesystem::path& path) { return map_from_json(parse_json(path)); }

void write_map_file(const std::filesystem::path& path, const MapFile& file) {
  write_text(path, to_json(file).dump(2) + "\n");
}

}  // namespace lipdist::io

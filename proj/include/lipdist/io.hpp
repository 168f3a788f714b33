#pragma once

#include "lipdist/constructions.hpp"
#include "lipdist/experiments.hpp"
#include "lipdist/metric_space.hpp"
#include "lipdist/solver.hpp"

#include <json.hpp>

#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>

namespace lipdist::io {

using json = nlohmann::json;

constexpr int kFormatVersion = 1;

/// Malformed or incompatible input file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// How a space was built, when it came from one of the families.
struct Provenance {
  Family family = Family::interval;
  std::string sign_vector;
  int depth = 0;
  int samples = 0;
  double slope = 1.0;
};

struct SpaceFile {
  FiniteMetricSpace space;
  std::optional<Provenance> provenance;
};

struct MapFile {
  std::string source;
  std::string target;
  Permutation perm;
};

json to_json(const SpaceFile& file);
SpaceFile space_from_json(const json& j);

json to_json(const MapFile& file);
MapFile map_from_json(const json& j);

json to_json(const DistortionReport& r);

/// Timing is included only when asked; it is the one nondeterministic field.
json to_json(const LipschitzResult& r, bool include_time = true);

json to_json(const FamilyReport& r);
json to_json(const FixtureReport& r);
json to_json(const RemarkReport& r);

std::string to_csv(const FamilyReport& r);
std::string to_csv(const FixtureReport& r);
std::string to_csv(const RemarkReport& r);

/// Round-trip decimal form of a double (17 significant digits).
std::string format_double(double x);

std::string read_text(const std::filesystem::path& path);
void write_text(const std::filesystem::path& path, const std::string& text);

SpaceFile read_space_file(const std::filesystem::path& path);
void write_space_file(const std::filesystem::path& path, const SpaceFile& file);
MapFile read_map_file(const std::filesystem::path& path);
void write_map_file(const std::filesystem::path& path, const MapFile& file);

}  // namespace lipdist::io

#pragma once

// Command-line front end. run() never throws: errors become exit code 2 with
// a message on `err`.

#include "foldmap/experiment.hpp"

#include <json.hpp>

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace foldmap::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kExitPass = 0;
inline constexpr int kExitFail = 1;
inline constexpr int kExitError = 2;

const char* version();

// config.cpp
/// Unknown keys are rejected with invalid-input.
ExperimentConfig parse_config(const Json& j);
struct LoadedConfig {
  ExperimentConfig config;
  std::optional<std::string> output;
};
LoadedConfig load_config(const std::filesystem::path& path);
Json config_to_json(const ExperimentConfig& c);

// report_writer.cpp
Json report_to_json(const ExperimentReport& r);
/// node, coordinates, v components, u components.
std::string samples_csv(const ExperimentReport& r);
/// Writes to a sibling temporary file, then renames over `path`.
void write_atomic(const std::filesystem::path& path, const std::string& content);
/// Shortest round-trip text for a double (nlohmann's number formatting).
std::string dump(const Json& j);

// svg.cpp
struct ScatterLayer {
  std::vector<Point> points;
  std::string color;
};
struct Figure {
  std::string title;
  std::vector<ScatterLayer> layers;
  std::vector<std::vector<Point>> polygons;  // closed outlines
  std::vector<std::string> polygon_colors;
};
/// Deterministic SVG text, or nullopt when there is nothing to draw or the
/// data is not two-dimensional.
std::optional<std::string> render_svg(const Figure& f);

// run.cpp
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run(int argc, char** argv);

}  // namespace foldmap::cli

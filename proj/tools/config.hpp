#pragma once

#include <optional>
#include <string>
#include <vector>

// Resolved run configuration. Values are merged with precedence
// flag > config file > default before a command runs.
struct RunConfig {
  std::string command;

  // market parameters
  double q = 2.0;
  double gamma = 1.3;
  double alpha = 0.6;
  double v = 1.0;
  double c_v = 1.0;
  double c_h = 0.1;

  // common options
  std::string out;          // empty = stdout
  std::string format;       // "csv" or "json"; empty = command default
  std::uint64_t seed = 1;
  double epsilon = 1e-6;
  bool strict_epsilon = false;

  // command-specific
  std::vector<std::string> pair;       // e.g. {"BP","BS"}
  std::vector<std::string> strategies; // regions subset
  std::string strategy = "UP";         // simulate
  std::vector<double> prices;          // simulate
  std::string axis = "q";              // thresholds
  std::string axis2 = "alpha";         // regions second axis
  std::optional<std::pair<double, double>> bracket;
  double tol = 1e-6;
  std::uint64_t n = 1000000;           // simulate agents per class
  int samples = 200;                   // validate draws
  int grid_points = 256;               // oracle grid resolution
  int refine_rounds = 3;
  double shrink = 0.1;
  std::optional<std::pair<double, double>> q_range;      // sweep ranges
  std::optional<int> q_points;
  std::optional<std::pair<double, double>> alpha_range;
  std::optional<int> alpha_points;
  std::optional<std::pair<double, double>> gamma_range;
  std::optional<int> gamma_points;
};

// Unresolved option set: every field optional so merging can tell what
// was explicitly given.
struct RawOptions {
  std::optional<std::string> command;
  std::optional<double> q, gamma, alpha, v, c_v, c_h;
  std::optional<std::string> out, format;
  std::optional<std::uint64_t> seed;
  std::optional<double> epsilon;
  std::optional<bool> strict_epsilon;
  std::optional<std::vector<std::string>> pair, strategies;
  std::optional<std::string> strategy;
  std::optional<std::vector<double>> prices;
  std::optional<std::string> axis, axis2;
  std::optional<std::pair<double, double>> bracket;
  std::optional<double> tol;
  std::optional<std::uint64_t> n;
  std::optional<int> samples;
  std::optional<int> grid_points, refine_rounds;
  std::optional<double> shrink;
  std::optional<std::pair<double, double>> q_range, alpha_range, gamma_range;
  std::optional<int> q_points, alpha_points, gamma_points;
};

// Parses the JSON config document. Throws std::runtime_error with a
// parse-oriented message on malformed input or unknown keys.
RawOptions load_config_file(const std::string& path);

// flag > config > default.
RunConfig merge_options(const RawOptions& flags, const RawOptions& config);

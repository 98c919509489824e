#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "unruh_pair/coefficients.hpp"
#include "unruh_pair/sweep.hpp"

namespace unruh {

inline constexpr const char* kVersion = "0.1.0";

// Everything a single invocation needs. Keys in the JSON form match the
// long flag names with dashes replaced by underscores ("tau_max", "with_d").
struct RunConfig {
  std::string command;  // coeffs | evolve | rate | region | sweep | maxc | steady | oracle
  SimConfig sim;
  InitialSpec init;

  double tau_max = 20.0;
  int samples = 0;  // 0: command default (evolve/oracle 401, sweep 200)
  int grid = 300;
  double l_max = 6.0;
  double a_max = 10.0;

  std::string vary = "accel";  // sweep axis: accel | sep
  double from = 0.0;           // 0: axis default ([0.01, 20] accel, [0.05, 50] sep)
  double to = 0.0;
  std::string spacing = "log";
  std::string quantity = "rate";  // rate | rate-clamped | maxc

  double dt = 1e-3;       // oracle RK4 step
  double fd_step = 1e-5;  // finite-difference step for the numerical rate
  bool free_hamiltonian = false;

  std::string out;  // empty: stdout
  std::string format = "csv";
  bool gnuplot_hint = false;

  bool help = false;
  std::string help_text;

  // Fills command-dependent defaults and checks cross-field consistency.
  void finalize();
};

bool operator==(const RunConfig& a, const RunConfig& b);

nlohmann::ordered_json to_json(const RunConfig& config);

// Overlays the keys present in `j` onto `config`. Throws Error(Usage) on
// unknown keys or wrongly typed values.
void apply_json(const nlohmann::json& j, RunConfig& config);

RunConfig from_json(const nlohmann::json& j);

// Parses argv (argv[0] is the program name). Flags given explicitly override
// values from --config. Help requests come back with help = true.
RunConfig parse_cli(const std::vector<std::string>& args);

}  // namespace unruh

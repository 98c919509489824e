#pragma once

#include <string>

#include "unruh_pair/emit.hpp"
#include "unruh_pair/run_config.hpp"

namespace unruh {

// Executes one subcommand and returns its table.
Table run_command(const RunConfig& config);

// A gnuplot one-liner (as a '#' comment) for the given command's output.
std::string gnuplot_hint(const RunConfig& config);

}  // namespace unruh

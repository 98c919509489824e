// Command-line front end: one subcommand per dataset, CSV or JSON out.

#include <exception>
#include <iostream>
#include <string>
#include <vector>

#include "unruh_pair/commands.hpp"
#include "unruh_pair/errors.hpp"

int main(int argc, char** argv) {
  using namespace unruh;
  try {
    const RunConfig config = parse_cli(std::vector<std::string>(argv, argv + argc));
    if (config.help) {
      std::cout << config.help_text;
      return 0;
    }
    emit(render(run_command(config), config), config.out);
    if (config.gnuplot_hint) {
      const bool to_stdout = !config.out.empty() && config.out != "-";
      (to_stdout ? std::cout : std::cerr) << gnuplot_hint(config);
    }
    return 0;
  } catch (const Error& e) {
    std::cerr << "error: " << code_name(e.code()) << ": " << e.what() << '\n';
    return exit_status(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: internal: " << e.what() << '\n';
    return 1;
  }
}

// twcurve: canonical forms and isomorphisms of pointed plane curves.

#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "twcurve/cli/commands.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Canonical forms and isomorphisms of pointed plane curves"};
  app.set_help_flag("-h,--help", "Print this help message and exit");
  std::string command, jobfile;
  std::optional<long> order, max_precision, max_degree;
  bool json = false;
  app.add_option("command", command, "expand | semigroup | normalforms | twform | inverse | iso | aut | verify")
      ->required();
  app.add_option("jobfile", jobfile, "Job file ('-' reads standard input)")->required();
  app.add_option("--order", order, "Expansion order for 'expand' (y known modulo T^N)")->check(CLI::PositiveNumber);
  app.add_option("--max-precision", max_precision, "Cap on series terms and relation precision")
      ->check(CLI::PositiveNumber);
  app.add_option("--max-degree", max_degree, "Cap on weighted degrees when expressing x, y in the generators")
      ->check(CLI::PositiveNumber);
  app.add_flag("--json", json, "Emit a JSON document with exact string numbers");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : twc::cli::kExitInput;
  }

  std::string text;
  if (jobfile == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream in(jobfile, std::ios::binary);
    if (!in) {
      std::cerr << "error: cannot read job file '" << jobfile << "'\n";
      return twc::cli::kExitInput;
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }

  twc::cli::CommandOptions opt;
  opt.order = order;
  opt.max_precision = max_precision;
  opt.max_degree = max_degree;
  opt.json = json;
  twc::cli::CommandResult result = twc::cli::run_command(command, text, opt);
  (result.is_error ? std::cerr : std::cout) << result.output;
  return result.exit_code;
}

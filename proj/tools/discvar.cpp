// discvar: minimal discriminant varieties of parametric polynomial systems.

#include <fstream>
#include <iostream>
#include <map>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "discvar/commands.hpp"

int main(int argc, char** argv) {
  using namespace discvar;
  using namespace discvar::cli;

  CLI::App app{"Minimal discriminant varieties of parametric polynomial systems"};
  app.require_subcommand(1);
  app.fallthrough();

  GlobalOptions opt;
  std::string input, output, mode = "deterministic";
  app.add_option("--input", input, "input document (system, result or ideal)");
  app.add_option("--output", output, "write the result document here instead of stdout");
  app.add_option("--mode", mode, "deterministic or probabilistic")
      ->check(CLI::IsMember({"deterministic", "probabilistic"}));
  app.add_option("--seed", opt.seed, "64-bit seed for every random choice");
  app.add_flag("--stats", opt.stats, "print statistics and write timings");
  app.add_option("--max-pairs", opt.max_pairs, "abort a Groebner run after N reduced pairs");
  app.add_option("--max-coeff-bits", opt.max_coeff_bits, "abort when a coefficient exceeds N bits");
  app.add_option("--timeout-seconds", opt.timeout_seconds, "wall-clock limit");

  auto* compute = app.add_subcommand("compute", "minimal discriminant variety of a system");

  auto* compare = app.add_subcommand("compare", "compare two varieties (result or system documents)");
  std::vector<std::string> compare_files;
  bool real_hint = false;
  compare->add_option("files", compare_files, "A and B (A may also come from --input)")->expected(1, 2);
  compare->add_flag("--real-hint", real_hint, "annotate witnesses without real points");

  auto* elim = app.add_subcommand("eliminate", "elimination ideal of an ideal document");

  auto* fiber = app.add_subcommand("fiber-count", "number of solutions above a parameter point");
  std::vector<std::string> point;
  fiber->add_option("--point", point, "NAME=VALUE[,NAME=VALUE...]")->required();

  auto* bound = app.add_subcommand("degree-bound", "degree bounds for the discriminant variety");

  auto* xval = app.add_subcommand("cross-validate", "Groebner elimination against the Macaulay oracle");
  std::size_t count = 10;
  xval->add_option("--count", count, "number of random instances");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : input_error;
  }

  if (!input.empty()) opt.input = input;
  if (!output.empty()) opt.output = output;
  opt.mode = mode == "probabilistic" ? Mode::probabilistic : Mode::deterministic;

  CommandResult r;
  if (compute->parsed()) {
    r = cmd_compute(opt);
  } else if (compare->parsed()) {
    std::vector<std::string> files = compare_files;
    if (opt.input) files.insert(files.begin(), *opt.input);
    if (files.size() != 2) {
      std::cerr << "error: compare needs two documents\n";
      return input_error;
    }
    r = cmd_compare(opt, files[0], files[1], real_hint);
  } else if (elim->parsed()) {
    r = cmd_eliminate(opt);
  } else if (fiber->parsed()) {
    r = cmd_fiber_count(opt, point);
  } else if (bound->parsed()) {
    r = cmd_degree_bound(opt);
  } else if (xval->parsed()) {
    r = cmd_cross_validate(opt, count);
  }

  std::cerr << r.diagnostics;
  if (!r.output.empty()) {
    if (opt.output) {
      std::ofstream out(*opt.output, std::ios::binary);
      if (!out) {
        std::cerr << "error: cannot write " << *opt.output << "\n";
        return input_error;
      }
      out << r.output;
    } else {
      std::cout << r.output;
    }
  }
  return r.exit_code;
}

// specker: reproduce and explore LSW-inequality violations with unsharp
// qubit measurements.
//
// Usage:
//   specker reproduce [--tolerance 1e-12] [--format text|csv|json]
//   specker evaluate scenario.json [--format json|csv|text]
//   specker sweep --axes trine --eta-min 0.4 --eta-max 0.73 --step 0.005 [--output out.csv]
//   specker window [--axes trine | --scenario file.json] [--format ...]
//   specker model [--seed N] [--format ...]
//   specker scan-si [--resolution 50] [--format ...]

#include "specker/commands.hpp"
#include "specker/error.hpp"
#include "specker/ont_model.hpp"
#include "specker/scenario.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

using namespace specker;
using namespace specker::cli;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::Io, "cannot read '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Specker-scenario contextuality with unsharp qubit measurements"};
  app.require_subcommand(1);

  double tolerance = kDefaultClosedFormTolerance;
  std::uint64_t seed = kDefaultSeed;
  int resolution = 50;
  std::string output;

  auto* reproduce = app.add_subcommand("reproduce", "Recompute every reported value");
  reproduce->add_option("--tolerance", tolerance, "Tolerance for closed-form rows")
      ->capture_default_str();
  std::string reproduce_format = "text";
  reproduce->add_option("--format", reproduce_format)->check(CLI::IsMember({"json", "csv", "text"}));

  auto* evaluate = app.add_subcommand("evaluate", "Evaluate a scenario file");
  std::string scenario_path;
  evaluate->add_option("scenario", scenario_path, "Scenario JSON file")->required();
  std::string evaluate_format = "json";
  evaluate->add_option("--format", evaluate_format)->check(CLI::IsMember({"json", "csv", "text"}));

  auto* sweep = app.add_subcommand("sweep", "Optimal C and S across a range of eta");
  std::string sweep_axes = "trine";
  double eta_min = 0.4;
  double eta_max = 0.73;
  double step = 0.005;
  sweep->add_option("--axes", sweep_axes)->check(CLI::IsMember({"trine", "orthogonal"}));
  sweep->add_option("--eta-min", eta_min)->capture_default_str();
  sweep->add_option("--eta-max", eta_max)->capture_default_str();
  sweep->add_option("--step", step)->capture_default_str();
  sweep->add_option("--output", output, "CSV path (stdout when omitted)");

  auto* window = app.add_subcommand("window", "Print the pairwise-but-not-triplewise window");
  std::string window_axes = "trine";
  std::string window_scenario;
  window->add_option("--axes", window_axes)->check(CLI::IsMember({"trine", "orthogonal"}));
  window->add_option("--scenario", window_scenario, "Take the axes from a scenario file");
  std::string window_format = "text";
  window->add_option("--format", window_format)->check(CLI::IsMember({"json", "csv", "text"}));

  auto* model = app.add_subcommand("model", "Noncontextual model maxima and feasibility demo");
  model->add_option("--seed", seed, "Monte Carlo seed")->capture_default_str();
  std::string model_format = "text";
  model->add_option("--format", model_format)->check(CLI::IsMember({"json", "csv", "text"}));

  auto* scan = app.add_subcommand("scan-si", "Grid scan of the state-independent condition");
  scan->add_option("--resolution", resolution)->capture_default_str();
  std::string scan_format = "text";
  scan->add_option("--format", scan_format)->check(CLI::IsMember({"json", "csv", "text"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInvalidInput;
  }

  try {
    if (*reproduce) return cmd_reproduce(tolerance, parse_format(reproduce_format), std::cout);
    if (*evaluate) {
      return cmd_evaluate(read_file(scenario_path), parse_format(evaluate_format), std::cout,
                          std::cerr);
    }
    if (*sweep) return cmd_sweep(sweep_axes, eta_min, eta_max, step, output, std::cout, std::cerr);
    if (*window) {
      MeasurementTriple axes = preset_triple(window_axes);
      if (!window_scenario.empty()) {
        axes = resolve_scenario(parse_scenario(read_file(window_scenario))).triple;
      }
      return cmd_window(axes, parse_format(window_format), std::cout);
    }
    if (*model) return cmd_model(seed, parse_format(model_format), std::cout);
    if (*scan) return cmd_scan_si(resolution, parse_format(scan_format), std::cout, std::cerr);
  } catch (const Error& e) {
    std::cerr << "error (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return kExitInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitInternal;
}

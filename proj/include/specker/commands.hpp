#pragma once

// Subcommand implementations behind the `specker` executable. Each one writes
// to the given streams and returns the process exit code.

#include "specker/lsw.hpp"
#include "specker/optimizer.hpp"

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace specker::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitInternal = 1,
  kExitInvalidInput = 2,
  kExitReproductionFailure = 3,
};

enum class Format { Json, Csv, Text };

Format parse_format(std::string_view name);

/// Machine formats: 17 significant digits.
std::string format_machine(double v);
/// Console text: 6 significant digits.
std::string format_text(double v);

struct ReproductionRow {
  std::string quantity;
  double reference_value = 0.0;
  double computed = 0.0;
  double tolerance = 0.0;

  double abs_diff() const;
  bool pass() const { return abs_diff() <= tolerance; }
};

/// Default tolerance of rows whose reference value is a closed form.
inline constexpr double kDefaultClosedFormTolerance = 1e-12;

/// Every reproduced quantity. Rows quoted as decimals carry their own
/// tolerances; closed-form rows use `closed_form_tolerance`.
std::vector<ReproductionRow> reproduction_rows(double closed_form_tolerance);

struct SweepRow {
  double eta = 0.0;
  double c_max = 0.0;
  double s = 0.0;
  double r3_quantum = 0.0;
  double lsw_bound = 0.0;
  bool in_specker_window = false;
};

/// Rows at eta_min + k step for every k with eta <= eta_max. Throws
/// Error(InvalidArgument) for step <= 0, eta_min <= 0, or eta_max > eta_upper.
std::vector<SweepRow> sweep_rows(const MeasurementTriple& axes, double eta_min, double eta_max,
                                 double step);

void write_report(const ScenarioReport& r, Format format, std::ostream& out);
void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out);

int cmd_evaluate(std::string_view scenario_text, Format format, std::ostream& out,
                 std::ostream& err);
int cmd_reproduce(double closed_form_tolerance, Format format, std::ostream& out);
int cmd_sweep(std::string_view axes_preset, double eta_min, double eta_max, double step,
              const std::string& output_path, std::ostream& out, std::ostream& err);
int cmd_window(const MeasurementTriple& axes, Format format, std::ostream& out);
int cmd_model(std::uint64_t seed, Format format, std::ostream& out);
int cmd_scan_si(int resolution, Format format, std::ostream& out, std::ostream& err);

}  // namespace specker::cli

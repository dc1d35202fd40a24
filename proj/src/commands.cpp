#include "specker/commands.hpp"

#include "specker/error.hpp"
#include "specker/joint_measurability.hpp"
#include "specker/joint_povm.hpp"
#include "specker/ont_model.hpp"
#include "specker/scenario.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <iomanip>
#include <numbers>
#include <ostream>
#include <sstream>

namespace specker::cli {

namespace {

using nlohmann::json;

std::string format_with(double v, int digits) {
  std::ostringstream s;
  s << std::setprecision(digits) << v;
  return s.str();
}

json vec_json(const Vec3& v) { return json::array({v.x(), v.y(), v.z()}); }

std::string vec_text(const Vec3& v, std::string (*fmt)(double)) {
  return "(" + fmt(v.x()) + ", " + fmt(v.y()) + ", " + fmt(v.z()) + ")";
}

std::string pair_name(const std::array<int, 2>& p) {
  return std::to_string(p[0] + 1) + std::to_string(p[1] + 1);
}

// Evaluates R3 end to end: build the three joint POVMs and take the Born
// average of their anticorrelation effects.
double r3_end_to_end(const OptimalConfig& cfg) {
  std::array<JointPovm, 3> joints;
  for (std::size_t k = 0; k < kPairs.size(); ++k) {
    joints[k] = construct_joint(cfg.triple.observable(kPairs[k][0]),
                                cfg.triple.observable(kPairs[k][1]), cfg.params[k]);
  }
  return r3_quantum(cfg.optimal_state, joints);
}

json report_json(const ScenarioReport& r) {
  json diagnostics = json::array();
  for (const auto& d : r.diagnostics) {
    diagnostics.push_back({{"pair", pair_name(d.pair)},
                           {"alpha", d.params.alpha},
                           {"a", vec_json(d.params.a)},
                           {"alpha_min", d.validity.window.alpha_min},
                           {"alpha_max", d.validity.window.alpha_max},
                           {"lower_slack", d.validity.lower_slack},
                           {"upper_slack", d.validity.upper_slack},
                           {"valid", d.validity.valid()}});
  }
  json doc = {
      {"eta", r.eta},
      {"eta_is_supremum", r.eta_is_supremum},
      {"window",
       {{"eta_lower", r.window.eta_lower},
        {"eta_upper", r.window.eta_upper},
        {"nonempty", r.window.nonempty}}},
      {"eta_in_window", r.eta_in_window},
      {"state", vec_json(r.state.bloch())},
      {"r3_quantum", r.r3_quantum},
      {"bound_ks", r.bound_ks},
      {"bound_lsw", r.bound_lsw},
      {"violation_s", r.violation_s},
      {"violation_c", r.violation_c},
      {"lambda_rho", r.lambda_rho},
      {"sum_alpha", r.sum_alpha},
      {"a_total", vec_json(r.a_total)},
      {"violated", r.violated},
      {"diagnostics", diagnostics},
  };
  doc["optimal_state"] = r.optimal_state ? vec_json(r.optimal_state->bloch()) : json(nullptr);
  return doc;
}

std::string bool_text(bool b) { return b ? "true" : "false"; }

}  // namespace

Format parse_format(std::string_view name) {
  if (name == "json") return Format::Json;
  if (name == "csv") return Format::Csv;
  if (name == "text") return Format::Text;
  throw Error(ErrorKind::Parse, "unknown format '" + std::string(name) + "'");
}

std::string format_machine(double v) { return format_with(v, 17); }
std::string format_text(double v) { return format_with(v, 6); }

double ReproductionRow::abs_diff() const { return std::abs(computed - reference_value); }

std::vector<ReproductionRow> reproduction_rows(double tol) {
  const double sqrt13 = std::sqrt(13.0);
  std::vector<ReproductionRow> rows;

  const auto trine = MeasurementTriple::trine();
  const auto orth = MeasurementTriple::orthogonal();
  const auto w_trine = specker_window(trine);
  const auto w_orth = specker_window(orth);
  rows.push_back({"eta_lower trine", 2.0 / 3.0, w_trine.eta_lower, tol});
  rows.push_back({"eta_upper trine", std::sqrt(3.0) - 1.0, w_trine.eta_upper, tol});
  rows.push_back({"eta_lower orthogonal", 1.0 / std::sqrt(3.0), w_orth.eta_lower, tol});
  rows.push_back({"eta_upper orthogonal", 1.0 / std::sqrt(2.0), w_orth.eta_upper, tol});

  const EtaOptimum constrained = optimize_eta(trine.cosines(), EtaMode::Constrained);
  const OptimalConfig cfg = optimal_config(MeasurementTriple::trine(constrained.eta_star));
  const double r3 = r3_end_to_end(cfg);
  rows.push_back({"constrained eta* (supremum at eta_lower)", 2.0 / 3.0, constrained.eta_star, tol});
  rows.push_back({"alpha_ij", 7.0 / 9.0, cfg.params[0].alpha, tol});
  rows.push_back({"|a_ij|", sqrt13 / 9.0, cfg.params[0].a.norm(), tol});
  rows.push_back({"optimal state Bloch y", 1.0, cfg.optimal_state.bloch().y(), tol});
  rows.push_back({"C_max trine (closed form)", sqrt13 / 3.0 - 1.0, constrained.c_star, tol});
  rows.push_back({"C_max trine (quoted)", 0.20185, constrained.c_star, 5e-5});
  rows.push_back({"S_max trine (closed form)", (sqrt13 / 3.0 - 1.0) / 6.0, constrained.c_star / 6.0, tol});
  rows.push_back({"S_max trine (quoted)", 0.03364, constrained.c_star / 6.0, 5e-5});
  rows.push_back({"R3 quantum trine", 0.8114, r3, 5e-5});
  rows.push_back({"LSW bound at eta_lower", 7.0 / 9.0, lsw_bound(constrained.eta_star), tol});
  rows.push_back({"R3 - LSW bound = C_max / 6", constrained.c_star / 6.0,
                  r3 - lsw_bound(constrained.eta_star), 1e-9});

  const EtaOptimum relaxed = optimize_eta(trine.cosines(), EtaMode::Relaxed);
  const OptimalConfig relaxed_cfg = optimal_config(MeasurementTriple::trine(relaxed.eta_star));
  rows.push_back({"relaxed eta*", 0.4566, relaxed.eta_star, 1e-3});
  rows.push_back({"relaxed violation S", 0.0896, relaxed.c_star / 6.0, 5e-4});
  rows.push_back({"relaxed R3 quantum", 0.9374, r3_end_to_end(relaxed_cfg), 5e-4});
  rows.push_back({"relaxed LSW bound", 0.8478, lsw_bound(relaxed.eta_star), 5e-4});

  rows.push_back({"KS bound (model R3 max at eta=1)", 2.0 / 3.0, model_r3_max(1.0).r3, tol});
  rows.push_back({"model R3 max at eta=2/3", 7.0 / 9.0, model_r3_max(2.0 / 3.0).r3, tol});
  rows.push_back({"model R3 max at eta=0", 1.0, model_r3_max(0.0).r3, tol});
  return rows;
}

std::vector<SweepRow> sweep_rows(const MeasurementTriple& axes, double eta_min, double eta_max,
                                 double step) {
  if (!(step > 0.0)) throw Error(ErrorKind::InvalidArgument, "sweep step must be positive");
  const CompatibilityWindow window = specker_window(axes);
  if (!(eta_min > 0.0) || eta_min > window.eta_upper + kTolAlg ||
      eta_max > window.eta_upper + kTolAlg) {
    std::ostringstream msg;
    msg << "sweep range must lie within (0, " << window.eta_upper << "]";
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }

  std::vector<SweepRow> rows;
  for (long k = 0;; ++k) {
    const double eta = eta_min + static_cast<double>(k) * step;
    if (eta > eta_max + kTolAlg) break;
    MeasurementTriple t = axes;
    t.eta = std::min(eta, window.eta_upper);
    const OptimalConfig cfg = optimal_config(t);
    SweepRow row;
    row.eta = eta;
    row.c_max = cfg.c_max;
    row.s = cfg.s_max;
    row.r3_quantum = r3_end_to_end(cfg);
    row.lsw_bound = lsw_bound(t.eta);
    row.in_specker_window = window.contains(eta);
    rows.push_back(row);
  }
  return rows;
}

void write_sweep_csv(const std::vector<SweepRow>& rows, std::ostream& out) {
  out << "eta,c_max,s,r3_quantum,lsw_bound,in_specker_window\n";
  for (const auto& r : rows) {
    out << format_machine(r.eta) << ',' << format_machine(r.c_max) << ',' << format_machine(r.s)
        << ',' << format_machine(r.r3_quantum) << ',' << format_machine(r.lsw_bound) << ','
        << bool_text(r.in_specker_window) << '\n';
  }
}

void write_report(const ScenarioReport& r, Format format, std::ostream& out) {
  switch (format) {
    case Format::Json:
      out << report_json(r).dump(2) << '\n';
      return;
    case Format::Csv: {
      out << "eta,eta_is_supremum,eta_lower,eta_upper,eta_in_window,state_x,state_y,state_z,"
             "r3_quantum,bound_ks,bound_lsw,violation_s,violation_c,lambda_rho,sum_alpha,"
             "a_x,a_y,a_z,violated\n";
      const auto& s = r.state.bloch();
      out << format_machine(r.eta) << ',' << bool_text(r.eta_is_supremum) << ','
          << format_machine(r.window.eta_lower) << ',' << format_machine(r.window.eta_upper)
          << ',' << bool_text(r.eta_in_window) << ',' << format_machine(s.x()) << ','
          << format_machine(s.y()) << ',' << format_machine(s.z()) << ','
          << format_machine(r.r3_quantum) << ',' << format_machine(r.bound_ks) << ','
          << format_machine(r.bound_lsw) << ',' << format_machine(r.violation_s) << ','
          << format_machine(r.violation_c) << ',' << format_machine(r.lambda_rho) << ','
          << format_machine(r.sum_alpha) << ',' << format_machine(r.a_total.x()) << ','
          << format_machine(r.a_total.y()) << ',' << format_machine(r.a_total.z()) << ','
          << bool_text(r.violated) << '\n';
      return;
    }
    case Format::Text: {
      out << "eta            " << format_text(r.eta)
          << (r.eta_is_supremum ? "  (limit from above; excluded endpoint)" : "") << '\n';
      out << "window         (" << format_text(r.window.eta_lower) << ", "
          << format_text(r.window.eta_upper) << "]"
          << (r.window.nonempty ? "" : " empty") << ", eta inside: " << bool_text(r.eta_in_window)
          << '\n';
      out << "state          " << vec_text(r.state.bloch(), format_text) << '\n';
      out << "R3 quantum     " << format_text(r.r3_quantum) << '\n';
      out << "KS bound       " << format_text(r.bound_ks) << '\n';
      out << "LSW bound      " << format_text(r.bound_lsw) << '\n';
      out << "S              " << format_text(r.violation_s) << '\n';
      out << "C              " << format_text(r.violation_c) << '\n';
      out << "lambda_rho     " << format_text(r.lambda_rho) << '\n';
      out << "violated       " << bool_text(r.violated) << '\n';
      for (const auto& d : r.diagnostics) {
        out << "pair " << pair_name(d.pair) << "        alpha=" << format_text(d.params.alpha)
            << " a=" << vec_text(d.params.a, format_text) << " window=["
            << format_text(d.validity.window.alpha_min) << ", "
            << format_text(d.validity.window.alpha_max) << "]\n";
      }
      return;
    }
  }
}

int cmd_evaluate(std::string_view scenario_text, Format format, std::ostream& out,
                 std::ostream& err) {
  try {
    const ScenarioReport report = evaluate(resolve_scenario(parse_scenario(scenario_text)));
    write_report(report, format, out);
    return kExitOk;
  } catch (const Error& e) {
    err << "invalid scenario (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return kExitInvalidInput;
  }
}

int cmd_reproduce(double tol, Format format, std::ostream& out) {
  const auto rows = reproduction_rows(tol);
  bool all_pass = true;
  switch (format) {
    case Format::Csv:
      out << "quantity,reference_value,computed_value,abs_diff,tolerance,pass\n";
      for (const auto& r : rows) {
        out << r.quantity << ',' << format_machine(r.reference_value) << ','
            << format_machine(r.computed) << ',' << format_machine(r.abs_diff()) << ','
            << format_machine(r.tolerance) << ',' << bool_text(r.pass()) << '\n';
      }
      break;
    case Format::Json: {
      json arr = json::array();
      for (const auto& r : rows) {
        arr.push_back({{"quantity", r.quantity},
                       {"reference_value", r.reference_value},
                       {"computed_value", r.computed},
                       {"abs_diff", r.abs_diff()},
                       {"tolerance", r.tolerance},
                       {"pass", r.pass()}});
      }
      out << arr.dump(2) << '\n';
      break;
    }
    case Format::Text:
      out << std::left << std::setw(42) << "quantity" << std::setw(14) << "reference"
          << std::setw(14) << "computed" << std::setw(14) << "|diff|" << std::setw(10) << "tol"
          << "result\n";
      for (const auto& r : rows) {
        out << std::left << std::setw(42) << r.quantity << std::setw(14)
            << format_text(r.reference_value) << std::setw(14) << format_text(r.computed)
            << std::setw(14) << format_text(r.abs_diff()) << std::setw(10)
            << format_text(r.tolerance) << (r.pass() ? "PASS" : "FAIL") << '\n';
      }
      break;
  }
  for (const auto& r : rows) all_pass = all_pass && r.pass();
  return all_pass ? kExitOk : kExitReproductionFailure;
}

int cmd_sweep(std::string_view axes_preset, double eta_min, double eta_max, double step,
              const std::string& output_path, std::ostream& out, std::ostream& err) {
  std::vector<SweepRow> rows;
  try {
    rows = sweep_rows(preset_triple(axes_preset), eta_min, eta_max, step);
  } catch (const Error& e) {
    err << "invalid sweep (" << to_string(e.kind()) << "): " << e.what() << '\n';
    return kExitInvalidInput;
  }
  if (output_path.empty()) {
    write_sweep_csv(rows, out);
    return kExitOk;
  }
  std::ofstream file(output_path, std::ios::binary | std::ios::trunc);
  if (!file) {
    err << "cannot open '" << output_path << "' for writing\n";
    return kExitInternal;
  }
  write_sweep_csv(rows, file);
  file.flush();
  if (!file) {
    err << "write to '" << output_path << "' failed\n";
    return kExitInternal;
  }
  return kExitOk;
}

int cmd_window(const MeasurementTriple& axes, Format format, std::ostream& out) {
  const CompatibilityWindow w = specker_window(axes);
  const auto c = axes.cosines();
  switch (format) {
    case Format::Json:
      out << json{{"eta_lower", w.eta_lower},
                  {"eta_upper", w.eta_upper},
                  {"nonempty", w.nonempty},
                  {"cosines", json::array({c[0], c[1], c[2]})}}
                 .dump(2)
          << '\n';
      break;
    case Format::Csv:
      out << "eta_lower,eta_upper,nonempty\n"
          << format_machine(w.eta_lower) << ',' << format_machine(w.eta_upper) << ','
          << bool_text(w.nonempty) << '\n';
      break;
    case Format::Text:
      out << "(" << format_text(w.eta_lower) << ", " << format_text(w.eta_upper) << "]"
          << (w.nonempty ? "" : "  empty") << '\n';
      break;
  }
  return kExitOk;
}

int cmd_model(std::uint64_t seed, Format format, std::ostream& out) {
  struct MaxRow {
    double eta;
    ModelMaximum max;
  };
  std::vector<MaxRow> maxima;
  for (int k = 0; k <= 10; ++k) {
    const double eta = k / 10.0;
    maxima.push_back({eta, model_r3_max(eta)});
  }

  // lambda = (0, 0, 1): pairs 13 and 23 always anticorrelate under the
  // deterministic part, pair 12 never does.
  struct FeasRow {
    std::string name;
    bool feasible;
  };
  std::vector<FeasRow> feas;
  const PairwiseDistribution fair{{0.25, 0.25, 0.25, 0.25}};
  feas.push_back({"independent fair coins", joint_feasibility(fair, fair, fair)});
  const PairwiseDistribution anti{{0.0, 0.5, 0.5, 0.0}};
  feas.push_back({"perfect anticorrelation", joint_feasibility(anti, anti, anti)});
  const HiddenAssignment lambda{{0, 0, 1}};
  for (double eta : {0.25, 0.5, 0.75, 1.0}) {
    feas.push_back({"model lambda=(0,0,1) eta=" + format_text(eta),
                    joint_feasibility(response_pair_table(eta, lambda, 0, 1),
                                      response_pair_table(eta, lambda, 0, 2),
                                      response_pair_table(eta, lambda, 1, 2))});
  }
  {
    const auto cfg = optimal_config(MeasurementTriple::trine(2.0 / 3.0));
    std::array<PairwiseDistribution, 3> d;
    for (std::size_t k = 0; k < kPairs.size(); ++k) {
      d[k] = quantum_pair_distribution(
          construct_joint(cfg.triple.observable(kPairs[k][0]), cfg.triple.observable(kPairs[k][1]),
                          cfg.params[k]),
          cfg.optimal_state);
    }
    feas.push_back({"quantum trine optimum", joint_feasibility(d[0], d[1], d[2])});
  }

  constexpr std::uint64_t kSamples = 1000000;
  const auto sampled = sample_response_pair(2.0 / 3.0, lambda, 0, 1, kSamples, seed);
  const auto exact = response_pair_table(2.0 / 3.0, lambda, 0, 1);

  switch (format) {
    case Format::Json: {
      json doc;
      doc["ks_bound"] = kKsBound;
      for (const auto& m : maxima) {
        doc["r3_max"].push_back({{"eta", m.eta},
                                 {"r3_max", m.max.r3},
                                 {"lsw_bound", lsw_bound(m.eta)},
                                 {"argmax", m.max.argmax.x}});
      }
      for (const auto& f : feas) doc["feasibility"].push_back({{"case", f.name}, {"joint_exists", f.feasible}});
      doc["monte_carlo"] = {{"seed", seed},
                            {"samples", kSamples},
                            {"sampled", sampled.p},
                            {"exact", exact.p}};
      out << doc.dump(2) << '\n';
      break;
    }
    case Format::Csv:
      out << "eta,r3_max,lsw_bound\n";
      for (const auto& m : maxima) {
        out << format_machine(m.eta) << ',' << format_machine(m.max.r3) << ','
            << format_machine(lsw_bound(m.eta)) << '\n';
      }
      break;
    case Format::Text:
      out << "KS bound " << format_text(kKsBound) << '\n';
      for (const auto& m : maxima) {
        out << "eta=" << format_text(m.eta) << "  R3 max=" << format_text(m.max.r3)
            << "  1-eta/3=" << format_text(lsw_bound(m.eta)) << '\n';
      }
      for (const auto& f : feas) {
        out << f.name << ": joint distribution " << (f.feasible ? "exists" : "does not exist")
            << '\n';
      }
      out << "sampled pair 12 (seed " << seed << ", " << kSamples << " draws): ";
      for (double p : sampled.p) out << format_text(p) << ' ';
      out << "\nexact:                                         ";
      for (double p : exact.p) out << format_text(p) << ' ';
      out << '\n';
      break;
  }
  return kExitOk;
}

int cmd_scan_si(int resolution, Format format, std::ostream& out, std::ostream& err) {
  SiScanResult r;
  try {
    r = no_si_scan(resolution);
  } catch (const Error& e) {
    err << e.what() << '\n';
    return kExitInvalidInput;
  }
  switch (format) {
    case Format::Json:
      out << json{{"resolution", r.resolution},
                  {"min_value", r.min_value},
                  {"theta12", r.theta12},
                  {"theta13", r.theta13},
                  {"phi3", r.phi3},
                  {"exceeds_one", r.min_value > 1.0}}
                 .dump(2)
          << '\n';
      break;
    case Format::Csv:
      out << "resolution,min_value,theta12,theta13,phi3\n"
          << r.resolution << ',' << format_machine(r.min_value) << ','
          << format_machine(r.theta12) << ',' << format_machine(r.theta13) << ','
          << format_machine(r.phi3) << '\n';
      break;
    case Format::Text:
      out << "min |cos(t12/2)|+|cos(t13/2)|+|cos(t23/2)| = " << format_text(r.min_value)
          << " at t12=" << format_text(r.theta12) << " t13=" << format_text(r.theta13)
          << " phi3=" << format_text(r.phi3) << (r.min_value > 1.0 ? "  (> 1)" : "  (<= 1!)")
          << '\n';
      break;
  }
  return kExitOk;
}

}  // namespace specker::cli

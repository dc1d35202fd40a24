#pragma once

// Scenario files: JSON documents describing a measurement triple, its
// sharpness, the pairwise joint-measurement parameters and the state.
//
//   {
//     "axes": "trine" | "orthogonal" | [[x, y, z], [x, y, z], [x, y, z]],
//     "eta": 0.7 | "optimal-constrained" | "optimal-relaxed",
//     "joint_params": "optimal"
//                   | {"12": {"alpha": a, "a": [x, y, z]}, "13": {...}, "23": {...}},
//     "state": "optimal" | [x, y, z] | {"q": q, "theta": t, "phi": p}
//   }
//
// "axes" and "eta" are required; "joint_params" and "state" default to
// "optimal". Unknown keys are rejected.

#include "specker/joint_povm.hpp"
#include "specker/lsw.hpp"
#include "specker/qubit_algebra.hpp"

#include <json.hpp>

#include <array>
#include <optional>
#include <string>
#include <string_view>
#include <variant>

namespace specker {

struct StateAngles {
  double q = 1.0;
  double theta = 0.0;
  double phi = 0.0;
};

struct OptimalTag {
  friend bool operator==(OptimalTag, OptimalTag) { return true; }
};

struct ScenarioFile {
  /// Preset name or three explicit axes.
  std::variant<std::string, std::array<Vec3, 3>> axes;
  /// Number, or "optimal-constrained" / "optimal-relaxed".
  std::variant<double, std::string> eta;
  std::variant<OptimalTag, std::array<JointParams, 3>> joint_params;
  std::variant<OptimalTag, Vec3, StateAngles> state;
};

/// Throws Error(Parse) with the offending key or the line/column of a syntax
/// error.
ScenarioFile parse_scenario(std::string_view text);

/// Canonical JSON form; parse_scenario(to_json(f).dump()) reproduces f.
nlohmann::json to_json(const ScenarioFile& f);

MeasurementTriple preset_triple(std::string_view name, double eta = 1.0);

struct ResolvedScenario {
  MeasurementTriple triple;
  bool eta_is_supremum = false;
  std::array<JointParams, 3> params;
  QubitState state = QubitState::maximally_mixed();
};

/// Picks eta, joint parameters and state. Throws Error on incompatible or
/// invalid inputs.
ResolvedScenario resolve_scenario(const ScenarioFile& f);

ScenarioReport evaluate(const ResolvedScenario& r);

}  // namespace specker

#pragma once

// Quantum evaluation of the average anticorrelation R3 over the three
// pairwise contexts and its comparison against the noncontextual bounds.

#include "specker/joint_measurability.hpp"
#include "specker/joint_povm.hpp"
#include "specker/qubit_algebra.hpp"

#include <array>
#include <optional>

namespace specker {

/// Outcome-deterministic bound on R3.
inline constexpr double kKsBound = 2.0 / 3.0;

/// (1/3) sum over pairs of Tr(rho (G+- + G-+)).
double r3_quantum(const QubitState& s, const std::array<JointPovm, 3>& joints);

/// 1 - eta/3.
double lsw_bound(double eta);

struct ViolationTerms {
  double sum_alpha = 0.0;
  Vec3 a_total = Vec3::Zero();
  /// (1 - 2q) a . n, equivalently -a . r.
  double lambda_rho = 0.0;
  /// sum_alpha + lambda_rho < 2 eta - kTolAlg.
  bool violated = false;
  double r3 = 0.0;
  double bound = 0.0;
};

/// Also recomputes R3 from the anticorrelation effects and throws
/// std::logic_error if 6 (R3 - bound) != 2 eta - sum_alpha - lambda_rho.
ViolationTerms violation_terms(const std::array<JointParams, 3>& params, const QubitState& s,
                               double eta);

/// Pure state along a / |a|, which gives lambda_rho = -|a|. Throws
/// Error(ZeroVector) when |a| <= kTolAlg.
QubitState optimal_state(const Vec3& a_total);

/// |cos(t12/2)| + |cos(t13/2)| + |cos(t23/2)| from the three cosines.
double si_necessary_sum(const std::array<double, 3>& cosines);

struct SiScanResult {
  double min_value = 0.0;
  double theta12 = 0.0;
  double theta13 = 0.0;
  double phi3 = 0.0;
  int resolution = 0;
};

/// Grid minimum of si_necessary_sum over theta12, theta13 in (0, pi) with
/// half-step offsets and phi3 in [0, 2 pi). Requires resolution >= 3.
SiScanResult no_si_scan(int resolution);

struct PairDiagnostics {
  std::array<int, 2> pair{};
  JointParams params;
  JointValidity validity;
};

struct ScenarioReport {
  double eta = 0.0;
  bool eta_is_supremum = false;
  CompatibilityWindow window;
  bool eta_in_window = false;

  QubitState state = QubitState::maximally_mixed();
  double r3_quantum = 0.0;
  double bound_ks = kKsBound;
  double bound_lsw = 0.0;
  double violation_s = 0.0;
  double violation_c = 0.0;
  double lambda_rho = 0.0;
  double sum_alpha = 0.0;
  Vec3 a_total = Vec3::Zero();
  bool violated = false;

  /// Unset when a_total vanishes and every state is equally good.
  std::optional<QubitState> optimal_state;
  std::array<PairDiagnostics, 3> diagnostics;
};

/// Builds the three joint POVMs (throws on invalid parameters) and evaluates
/// the state against both bounds.
ScenarioReport evaluate_scenario(const MeasurementTriple& triple,
                                 const std::array<JointParams, 3>& params, const QubitState& s);

}  // namespace specker

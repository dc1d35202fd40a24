#pragma once

// Optimization of the state-dependent violation
//
//   C = 2 eta - sum_ij alpha_ij + |sum_ij a_ij|,   S = C / 6,
//
// over joint-measurement parameters, sharpness, and coplanar measurement
// geometry. For coplanar axes the optimum over (alpha, a) is attained with
// every a_ij along the plane normal, |a_ij| = sqrt(1 + eta^4 c_ij^2 - 2 eta^2)
// and alpha_ij = 1 + eta^2 c_ij, which gives
//
//   C_max = 2 eta + sum_ij ( sqrt(1 + eta^4 c_ij^2 - 2 eta^2) - (1 + eta^2 c_ij) ).

#include "specker/joint_measurability.hpp"
#include "specker/joint_povm.hpp"
#include "specker/qubit_algebra.hpp"

#include <array>
#include <cstdint>

namespace specker {

enum class EtaMode {
  /// eta restricted to the open-below window (eta_lower, eta_upper].
  Constrained,
  /// eta in (0, eta_upper]; triplewise compatibility allowed.
  Relaxed,
};

const char* to_string(EtaMode mode);

/// Lower end of the relaxed eta bracket.
inline constexpr double kRelaxedEtaFloor = 1e-6;

/// Throws Error(IncompatiblePair) when any pair is incompatible at eta.
double c_max_closed_form(const std::array<double, 3>& cosines, double eta);

/// alpha = 1 + eta^2 c, a = normal * sqrt(1 + eta^4 c^2 - 2 eta^2).
JointParams optimal_joint_params(double cos_ij, double eta, const UnitAxis& plane_normal);

/// Unit normal of the plane holding all three axes, oriented along n1 x n2
/// when that cross product is nonzero. Throws Error(InvalidArgument) for
/// non-coplanar triples.
UnitAxis plane_normal(const MeasurementTriple& t);

/// optimal_joint_params for each pair of a coplanar triple at t.eta.
std::array<JointParams, 3> optimal_params(const MeasurementTriple& t);

/// Realizes a triple of unit axes with the given pairwise cosines, n1 = z and
/// n2 in the ZX plane. Throws Error(InvalidArgument) if the Gram matrix is not
/// positive semidefinite.
MeasurementTriple axes_from_cosines(const std::array<double, 3>& cosines, double eta = 1.0);

struct GridSpec {
  /// Magnitude samples per pair for the perpendicular family, over [0, 1].
  int a_points = 10000;
  /// Quasi-random directions per pair in the 3-D sample.
  int directions = 1000;
  /// Magnitudes per direction in the 3-D sample, over (0, 1].
  int magnitudes = 16;
  /// Random combinations of per-pair 3-D samples evaluated exactly.
  int combinations = 20000;
  std::uint64_t seed = 0xC0FFEE;
};

struct BruteResult {
  /// Best C over the perpendicular family grid.
  double c_perpendicular = 0.0;
  /// 2 eta + sum over pairs of max (|a_ij| - alpha_min(a_ij)) across the 3-D
  /// sample; an upper bound on C for any combination of sampled vectors.
  double c_sampled_bound = 0.0;
  /// Best exactly evaluated C over random combinations of 3-D samples.
  double c_sampled_max = 0.0;
};

/// Grid maximization of C over feasible (alpha, a) for axes realized from the
/// cosines. Throws Error(IncompatiblePair) when some pair is incompatible.
BruteResult c_max_brute(const std::array<double, 3>& cosines, double eta,
                        const GridSpec& grid = {});

struct EtaOptimum {
  double eta_star = 0.0;
  double c_star = 0.0;
  /// eta_star is the excluded lower end of the range; c_star is the limit.
  bool open_boundary_supremum = false;
};

/// Coarse scan over the eta range followed by golden-section refinement.
/// Throws Error(EmptyWindow) in constrained mode when the window is empty.
EtaOptimum optimize_eta(const std::array<double, 3>& cosines, EtaMode mode);

struct OptimalConfig {
  MeasurementTriple triple;
  double theta12 = 0.0;
  double theta13 = 0.0;
  double eta = 0.0;
  bool eta_is_supremum = false;
  std::array<JointParams, 3> params;
  double c_max = 0.0;
  double s_max = 0.0;
  QubitState optimal_state = QubitState::maximally_mixed();
};

/// Builds the optimal parameters and state for a coplanar triple at t.eta.
OptimalConfig optimal_config(const MeasurementTriple& t);

/// Sweeps coplanar triples n1 = z, n2 = (sin t12, 0, cos t12),
/// n3 = (-sin t13, 0, cos t13) over a half-step-offset grid on (0, pi)^2 and
/// returns the cell with the largest optimized C. Ties within 1e-12 go to the
/// lexicographically smallest (t12, t13). Requires resolution >= 8.
OptimalConfig optimize_geometry(int resolution, EtaMode mode, unsigned threads = 1);

}  // namespace specker

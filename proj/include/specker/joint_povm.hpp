#pragma once

// Four-outcome joint measurements for a pair of noisy observables.
//
// With common sharpness eta the general joint POVM whose marginals are
// E^i and E^j is fixed by a scalar alpha and a vector a:
//
//   G++ = 1/2 [ alpha/2 I     + sigma . 1/2 ( eta(n_i + n_j) - a) ]
//   G+- = 1/2 [ (1-alpha/2) I + sigma . 1/2 ( eta(n_i - n_j) + a) ]
//   G-+ = 1/2 [ (1-alpha/2) I + sigma . 1/2 (-eta(n_i - n_j) + a) ]
//   G-- = 1/2 [ alpha/2 I     + sigma . 1/2 (-eta(n_i + n_j) - a) ]
//
// All four are valid effects iff alpha lies in [alpha_min, alpha_max] with
//
//   alpha_min = sqrt(2 eta^2 (1 + n_i.n_j) + |a|^2 + 2 eta |(n_i + n_j).a|)
//   alpha_max = 2 - sqrt(2 eta^2 (1 - n_i.n_j) + |a|^2 + 2 eta |(n_i - n_j).a|)

#include "specker/qubit_algebra.hpp"

#include <array>
#include <string>

namespace specker {

struct JointParams {
  double alpha = 1.0;
  Vec3 a = Vec3::Zero();
};

struct JointPovm {
  QubitEffect g_pp;
  QubitEffect g_pm;
  QubitEffect g_mp;
  QubitEffect g_mm;

  /// Outcome order (+,+), (+,-), (-,+), (-,-).
  std::array<QubitEffect, 4> effects() const { return {g_pp, g_pm, g_mp, g_mm}; }
  /// x_i, x_j in {+1, -1}.
  const QubitEffect& effect(int x_i, int x_j) const;
  Povm as_povm() const { return {{g_pp, g_pm, g_mp, g_mm}}; }
};

struct AlphaWindow {
  double alpha_min = 0.0;
  double alpha_max = 0.0;

  bool empty() const { return alpha_min > alpha_max + kTolAlg; }
  bool contains(double alpha) const {
    return alpha >= alpha_min - kTolAlg && alpha <= alpha_max + kTolAlg;
  }
};

/// Slack of each validity inequality for one pair; negative means violated.
struct JointValidity {
  AlphaWindow window;
  double lower_slack = 0.0;  // alpha - alpha_min
  double upper_slack = 0.0;  // alpha_max - alpha

  bool valid() const { return lower_slack >= -kTolAlg && upper_slack >= -kTolAlg; }
  std::string describe() const;
};

AlphaWindow validity_window(const NoisyObservable& mi, const NoisyObservable& mj, const Vec3& a);

JointValidity check_joint_params(const NoisyObservable& mi, const NoisyObservable& mj,
                                 const JointParams& p);

/// Throws Error(MismatchedSharpness) when the two sharpnesses differ and
/// Error(InvalidJointParams) with both slacks when p is outside the window.
JointPovm construct_joint(const NoisyObservable& mi, const NoisyObservable& mj,
                          const JointParams& p);

/// G+- + G-+ = (1 - alpha/2) I + 1/2 sigma . a, i.e. c = 2 - alpha, v = a.
QubitEffect anticorrelation_effect(const JointPovm& g);

/// All four marginal identities within kTolAlg.
bool check_marginals(const JointPovm& g, const NoisyObservable& mi, const NoisyObservable& mj);

}  // namespace specker

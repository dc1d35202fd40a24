#pragma once

// Compatibility criteria for unbiased noisy spin observables of common
// sharpness: the pairwise necessary-and-sufficient test, the N-observable
// necessary and sufficient conditions built from the 2^N sign vectors
// m = sum_k X_k n_k, and the window (eta_lower, eta_upper] in which a triple is
// pairwise but not triplewise jointly measurable.

#include "specker/qubit_algebra.hpp"

#include <array>
#include <span>

namespace specker {

/// Sign-vector enumeration is exhaustive, so N is capped.
inline constexpr std::size_t kMaxObservables = 10;

/// Index pairs in the fixed order (12), (13), (23).
inline constexpr std::array<std::array<int, 2>, 3> kPairs = {{{0, 1}, {0, 2}, {1, 2}}};

struct MeasurementTriple {
  std::array<UnitAxis, 3> axes;
  double eta = 1.0;

  double cos_theta(int i, int j) const { return axes[i].dot(axes[j]); }
  /// Cosines in kPairs order.
  std::array<double, 3> cosines() const;
  NoisyObservable observable(int k) const { return NoisyObservable(axes[k], eta); }

  /// n_k = (sin(2 pi k / 3), 0, cos(2 pi k / 3)): mutual 120 degrees in the ZX plane.
  static MeasurementTriple trine(double eta = 1.0);
  /// z, x, y.
  static MeasurementTriple orthogonal(double eta = 1.0);
  /// n1 = z, n2 = (sin t12, 0, cos t12),
  /// n3 = (sin t13 cos p3, sin t13 sin p3, cos t13).
  static MeasurementTriple from_angles(double theta12, double theta13, double phi3,
                                       double eta = 1.0);
};

struct CompatibilityWindow {
  double eta_lower = 0.0;
  double eta_upper = 0.0;
  bool nonempty = false;

  /// eta_lower < eta <= eta_upper, exclusive below and inclusive above.
  bool contains(double eta) const;
};

/// 1 + eta^4 cos^2 - 2 eta^2 >= -kTolAlg. Rejects arguments outside
/// eta in [0, 1], cos in [-1, 1].
bool pairwise_compatible(double eta, double cos_theta);

/// min over pairs of 1 / sqrt(1 + |sin theta_ij|).
double eta_upper(const std::array<double, 3>& cosines);
double eta_upper(const MeasurementTriple& t);

/// (1/3) max over signs of sqrt(3 + 2 sum_{k<l} X_k X_l cos theta_kl).
double eta_lower(const std::array<double, 3>& cosines);
double eta_lower(const MeasurementTriple& t);

/// eta <= (1/N) max |m| within kTolAlg.
bool n_wise_necessary(std::span<const UnitAxis> axes, double eta);

/// eta <= 2^N / sum |m| within kTolAlg.
bool n_wise_sufficient(std::span<const UnitAxis> axes, double eta);

/// (1/N) max |m|, the largest eta allowed by the necessary condition.
double n_wise_necessary_bound(std::span<const UnitAxis> axes);

/// 2^N / sum |m|, the largest eta certified by the sufficient condition.
double n_wise_sufficient_bound(std::span<const UnitAxis> axes);

CompatibilityWindow specker_window(const std::array<double, 3>& cosines);
CompatibilityWindow specker_window(const MeasurementTriple& t);

}  // namespace specker

#pragma once

// Bloch-form qubit algebra.
//
// Every operator on C^2 is written as E = 1/2 (c I + v . sigma) with a real
// scalar c and a real 3-vector v. States are Bloch vectors r with |r| <= 1,
// so Tr(rho E) = 1/2 (c + v . r). Dense matrices appear only in as_matrix(),
// which exists so tests can check the Bloch-form rules against plain linear
// algebra.

#include <Eigen/Core>
#include <Eigen/Geometry>

#include <array>
#include <utility>
#include <vector>

namespace specker {

using Vec3 = Eigen::Vector3d;

/// Absolute tolerance for algebraic identities on unit-scale quantities.
inline constexpr double kTolAlg = 1e-12;

/// Largest accepted deviation of an input axis from unit norm.
inline constexpr double kAxisNormTol = 1e-9;

/// Unit 3-vector. Construction rejects inputs whose norm is off by more than
/// kAxisNormTol and renormalizes the rest.
class UnitAxis {
 public:
  /// z.
  UnitAxis() : v_(Vec3::UnitZ()) {}
  static UnitAxis make(const Vec3& v);
  static UnitAxis make(double x, double y, double z) { return make(Vec3(x, y, z)); }
  /// (sin t cos p, sin t sin p, cos t)
  static UnitAxis from_angles(double theta, double phi);

  static UnitAxis x() { return UnitAxis(Vec3::UnitX()); }
  static UnitAxis y() { return UnitAxis(Vec3::UnitY()); }
  static UnitAxis z() { return UnitAxis(Vec3::UnitZ()); }

  const Vec3& vec() const { return v_; }
  double dot(const UnitAxis& other) const { return v_.dot(other.v_); }
  UnitAxis operator-() const { return UnitAxis(-v_); }

 private:
  explicit UnitAxis(const Vec3& v) : v_(v) {}
  Vec3 v_;
};

struct QubitEffect {
  double c = 0.0;
  Vec3 v = Vec3::Zero();

  static QubitEffect identity() { return {2.0, Vec3::Zero()}; }

  /// Eigenvalues (c - |v|)/2 and (c + |v|)/2, ascending.
  std::pair<double, double> eigenvalues() const;

  friend QubitEffect operator+(const QubitEffect& a, const QubitEffect& b) {
    return {a.c + b.c, a.v + b.v};
  }
};

/// True iff 0 <= E <= I, i.e. |v| <= c <= 2 - |v| within kTolAlg.
bool effect_validity(const QubitEffect& e);

/// Exact equality of two effects within `tol` on every component.
bool approx_equal(const QubitEffect& a, const QubitEffect& b, double tol = kTolAlg);

class QubitState {
 public:
  /// Rejects |r| > 1 + kTolAlg.
  static QubitState from_bloch(const Vec3& r);
  /// rho = q |psi><psi| + (1-q)(I - |psi><psi|) with |psi> at polar angles
  /// (theta, phi); the Bloch vector is (2q - 1) n(theta, phi).
  static QubitState from_parameters(double q, double theta, double phi);
  static QubitState maximally_mixed() { return QubitState(Vec3::Zero()); }

  const Vec3& bloch() const { return r_; }
  bool is_pure() const;

 private:
  explicit QubitState(const Vec3& r) : r_(r) {}
  Vec3 r_;
};

/// Binary unsharp spin observable E_(+/-) = 1/2 (I +/- eta sigma . n).
class NoisyObservable {
 public:
  /// Rejects eta outside [0, 1].
  NoisyObservable(UnitAxis axis, double eta);

  const UnitAxis& axis() const { return axis_; }
  double eta() const { return eta_; }

  QubitEffect plus() const { return {1.0, eta_ * axis_.vec()}; }
  QubitEffect minus() const { return {1.0, -eta_ * axis_.vec()}; }
  QubitEffect effect(int outcome) const { return outcome > 0 ? plus() : minus(); }

 private:
  UnitAxis axis_;
  double eta_;
};

std::pair<QubitEffect, QubitEffect> observable_effects(const NoisyObservable& m);

struct Povm {
  std::vector<QubitEffect> effects;

  /// Effects sum to identity and each one is a valid effect.
  bool is_valid(double tol = kTolAlg) const;
};

/// Tr(rho E) = (c + v . r) / 2.
double born_probability(const QubitState& s, const QubitEffect& e);

/// 1/2 (c I + v_x sigma_x + v_y sigma_y + v_z sigma_z).
Eigen::Matrix2cd as_matrix(const QubitEffect& e);

/// Density matrix 1/2 (I + r . sigma).
Eigen::Matrix2cd as_matrix(const QubitState& s);

}  // namespace specker

#include "specker/qubit_algebra.hpp"

#include "specker/error.hpp"

#include <cmath>
#include <complex>
#include <sstream>

namespace specker {

const char* to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidJointParams: return "InvalidJointParams";
    case ErrorKind::MismatchedSharpness: return "MismatchedSharpness";
    case ErrorKind::IncompatiblePair: return "IncompatiblePair";
    case ErrorKind::EmptyWindow: return "EmptyWindow";
    case ErrorKind::ZeroVector: return "ZeroVector";
    case ErrorKind::InconsistentMarginals: return "InconsistentMarginals";
    case ErrorKind::Parse: return "Parse";
    case ErrorKind::Io: return "Io";
  }
  return "Unknown";
}

UnitAxis UnitAxis::make(const Vec3& v) {
  const double n = v.norm();
  if (!std::isfinite(n) || std::abs(n - 1.0) > kAxisNormTol) {
    std::ostringstream msg;
    msg << "axis (" << v.x() << ", " << v.y() << ", " << v.z() << ") has norm " << n
        << ", expected 1";
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
  return UnitAxis(v / n);
}

UnitAxis UnitAxis::from_angles(double theta, double phi) {
  const Vec3 v(std::sin(theta) * std::cos(phi), std::sin(theta) * std::sin(phi),
               std::cos(theta));
  return UnitAxis(v.normalized());
}

std::pair<double, double> QubitEffect::eigenvalues() const {
  const double r = v.norm();
  return {(c - r) / 2.0, (c + r) / 2.0};
}

bool effect_validity(const QubitEffect& e) {
  const double r = e.v.norm();
  return r <= e.c + kTolAlg && e.c <= 2.0 - r + kTolAlg;
}

bool approx_equal(const QubitEffect& a, const QubitEffect& b, double tol) {
  return std::abs(a.c - b.c) <= tol && (a.v - b.v).cwiseAbs().maxCoeff() <= tol;
}

QubitState QubitState::from_bloch(const Vec3& r) {
  const double n = r.norm();
  if (!std::isfinite(n) || n > 1.0 + kTolAlg) {
    std::ostringstream msg;
    msg << "Bloch vector norm " << n << " exceeds 1";
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
  return QubitState(r);
}

QubitState QubitState::from_parameters(double q, double theta, double phi) {
  if (!(q >= 0.0 && q <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "state weight q must lie in [0, 1]");
  }
  return QubitState((2.0 * q - 1.0) * UnitAxis::from_angles(theta, phi).vec());
}

bool QubitState::is_pure() const { return std::abs(r_.norm() - 1.0) <= kTolAlg; }

NoisyObservable::NoisyObservable(UnitAxis axis, double eta) : axis_(axis), eta_(eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    std::ostringstream msg;
    msg << "sharpness " << eta << " outside [0, 1]";
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
}

std::pair<QubitEffect, QubitEffect> observable_effects(const NoisyObservable& m) {
  return {m.plus(), m.minus()};
}

bool Povm::is_valid(double tol) const {
  QubitEffect total;
  for (const auto& e : effects) {
    if (!effect_validity(e)) return false;
    total = total + e;
  }
  return approx_equal(total, QubitEffect::identity(), tol);
}

double born_probability(const QubitState& s, const QubitEffect& e) {
  return 0.5 * (e.c + e.v.dot(s.bloch()));
}

namespace {

Eigen::Matrix2cd pauli_combination(double c, const Vec3& v) {
  using cd = std::complex<double>;
  Eigen::Matrix2cd m;
  m << cd(c + v.z(), 0.0), cd(v.x(), -v.y()),
       cd(v.x(), v.y()), cd(c - v.z(), 0.0);
  return 0.5 * m;
}

}  // namespace

Eigen::Matrix2cd as_matrix(const QubitEffect& e) { return pauli_combination(e.c, e.v); }

Eigen::Matrix2cd as_matrix(const QubitState& s) { return pauli_combination(1.0, s.bloch()); }

}  // namespace specker

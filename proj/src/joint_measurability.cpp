#include "specker/joint_measurability.hpp"

#include "specker/error.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

namespace specker {

namespace {

void check_eta(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    std::ostringstream msg;
    msg << "sharpness " << eta << " outside [0, 1]";
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
}

void check_cosine(double c) {
  if (!(c >= -1.0 - kTolAlg && c <= 1.0 + kTolAlg)) {
    std::ostringstream msg;
    msg << "cosine " << c << " outside [-1, 1]";
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
}

void check_count(std::size_t n) {
  if (n == 0 || n > kMaxObservables) {
    std::ostringstream msg;
    msg << "need between 1 and " << kMaxObservables << " observables, got " << n;
    throw Error(ErrorKind::InvalidArgument, msg.str());
  }
}

// |m| for every sign vector; bit k of the index set means X_k = -1.
std::vector<double> sign_vector_norms(std::span<const UnitAxis> axes) {
  check_count(axes.size());
  const std::size_t count = std::size_t{1} << axes.size();
  std::vector<double> norms(count);
  for (std::size_t mask = 0; mask < count; ++mask) {
    Vec3 m = Vec3::Zero();
    for (std::size_t k = 0; k < axes.size(); ++k) {
      m += ((mask >> k) & 1U) ? -axes[k].vec() : axes[k].vec();
    }
    norms[mask] = m.norm();
  }
  return norms;
}

double abs_sin(double c) { return std::sqrt(std::max(0.0, 1.0 - c * c)); }

}  // namespace

std::array<double, 3> MeasurementTriple::cosines() const {
  return {cos_theta(0, 1), cos_theta(0, 2), cos_theta(1, 2)};
}

MeasurementTriple MeasurementTriple::trine(double eta) {
  constexpr double step = 2.0 * std::numbers::pi / 3.0;
  return {{UnitAxis::z(), UnitAxis::make(std::sin(step), 0.0, std::cos(step)),
           UnitAxis::make(std::sin(2.0 * step), 0.0, std::cos(2.0 * step))},
          eta};
}

MeasurementTriple MeasurementTriple::orthogonal(double eta) {
  return {{UnitAxis::z(), UnitAxis::x(), UnitAxis::y()}, eta};
}

MeasurementTriple MeasurementTriple::from_angles(double theta12, double theta13, double phi3,
                                                 double eta) {
  return {{UnitAxis::z(), UnitAxis::from_angles(theta12, 0.0),
           UnitAxis::from_angles(theta13, phi3)},
          eta};
}

bool CompatibilityWindow::contains(double eta) const {
  return eta > eta_lower + kTolAlg && eta <= eta_upper + kTolAlg;
}

bool pairwise_compatible(double eta, double cos_theta) {
  check_eta(eta);
  check_cosine(cos_theta);
  const double e2 = eta * eta;
  return 1.0 + e2 * e2 * cos_theta * cos_theta - 2.0 * e2 >= -kTolAlg;
}

double eta_upper(const std::array<double, 3>& cosines) {
  double best = 1.0;
  for (double c : cosines) {
    check_cosine(c);
    best = std::min(best, 1.0 / std::sqrt(1.0 + abs_sin(c)));
  }
  return best;
}

double eta_upper(const MeasurementTriple& t) { return eta_upper(t.cosines()); }

double eta_lower(const std::array<double, 3>& cosines) {
  for (double c : cosines) check_cosine(c);
  double best = 0.0;
  // X_1 = +1 fixed; the global flip leaves every product X_k X_l unchanged.
  for (int x2 : {1, -1}) {
    for (int x3 : {1, -1}) {
      const double s = 3.0 + 2.0 * (x2 * cosines[0] + x3 * cosines[1] + x2 * x3 * cosines[2]);
      best = std::max(best, std::sqrt(std::max(0.0, s)));
    }
  }
  return best / 3.0;
}

double eta_lower(const MeasurementTriple& t) { return eta_lower(t.cosines()); }

double n_wise_necessary_bound(std::span<const UnitAxis> axes) {
  const auto norms = sign_vector_norms(axes);
  return *std::max_element(norms.begin(), norms.end()) / static_cast<double>(axes.size());
}

double n_wise_sufficient_bound(std::span<const UnitAxis> axes) {
  const auto norms = sign_vector_norms(axes);
  double total = 0.0;
  for (double n : norms) total += n;
  return static_cast<double>(norms.size()) / total;
}

bool n_wise_necessary(std::span<const UnitAxis> axes, double eta) {
  check_eta(eta);
  return eta <= n_wise_necessary_bound(axes) + kTolAlg;
}

bool n_wise_sufficient(std::span<const UnitAxis> axes, double eta) {
  check_eta(eta);
  return eta <= n_wise_sufficient_bound(axes) + kTolAlg;
}

CompatibilityWindow specker_window(const std::array<double, 3>& cosines) {
  CompatibilityWindow w;
  w.eta_lower = eta_lower(cosines);
  w.eta_upper = eta_upper(cosines);
  w.nonempty = w.eta_lower + kTolAlg < w.eta_upper;
  return w;
}

CompatibilityWindow specker_window(const MeasurementTriple& t) {
  return specker_window(t.cosines());
}

}  // namespace specker

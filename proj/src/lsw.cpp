#include "specker/lsw.hpp"

#include "specker/error.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>
#include <stdexcept>

namespace specker {

double r3_quantum(const QubitState& s, const std::array<JointPovm, 3>& joints) {
  double total = 0.0;
  for (const auto& g : joints) total += born_probability(s, anticorrelation_effect(g));
  return total / 3.0;
}

double lsw_bound(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "sharpness outside [0, 1]");
  }
  return 1.0 - eta / 3.0;
}

ViolationTerms violation_terms(const std::array<JointParams, 3>& params, const QubitState& s,
                               double eta) {
  ViolationTerms t;
  double r3 = 0.0;
  for (const auto& p : params) {
    t.sum_alpha += p.alpha;
    t.a_total += p.a;
    r3 += born_probability(s, QubitEffect{2.0 - p.alpha, p.a});
  }
  t.lambda_rho = -t.a_total.dot(s.bloch());
  t.violated = t.sum_alpha + t.lambda_rho < 2.0 * eta - kTolAlg;
  t.r3 = r3 / 3.0;
  t.bound = lsw_bound(eta);

  const double lhs = 6.0 * (t.r3 - t.bound);
  const double rhs = 2.0 * eta - t.sum_alpha - t.lambda_rho;
  if (std::abs(lhs - rhs) > 1e-9) {
    throw std::logic_error("violation condition disagrees with direct R3 evaluation");
  }
  return t;
}

QubitState optimal_state(const Vec3& a_total) {
  const double n = a_total.norm();
  if (n <= kTolAlg) {
    throw Error(ErrorKind::ZeroVector, "total a vector vanishes; every state is optimal");
  }
  return QubitState::from_bloch(a_total / n);
}

double si_necessary_sum(const std::array<double, 3>& cosines) {
  double total = 0.0;
  // |cos(t/2)| = sqrt((1 + cos t) / 2) for t in [0, pi].
  for (double c : cosines) total += std::sqrt(std::max(0.0, 0.5 * (1.0 + c)));
  return total;
}

SiScanResult no_si_scan(int resolution) {
  if (resolution < 3) {
    throw Error(ErrorKind::InvalidArgument, "scan resolution must be at least 3");
  }
  constexpr double pi = std::numbers::pi;
  SiScanResult best;
  best.resolution = resolution;
  best.min_value = std::numeric_limits<double>::infinity();

  const double theta_step = pi / resolution;
  const double phi_step = 2.0 * pi / resolution;
  for (int i = 0; i < resolution; ++i) {
    const double t12 = (i + 0.5) * theta_step;
    const double c12 = std::cos(t12);
    const double s12 = std::sin(t12);
    for (int j = 0; j < resolution; ++j) {
      const double t13 = (j + 0.5) * theta_step;
      const double c13 = std::cos(t13);
      const double s13 = std::sin(t13);
      for (int k = 0; k < resolution; ++k) {
        const double phi = k * phi_step;
        const double c23 = s12 * s13 * std::cos(phi) + c12 * c13;
        const double value = si_necessary_sum({c12, c13, c23});
        if (value < best.min_value) {
          best.min_value = value;
          best.theta12 = t12;
          best.theta13 = t13;
          best.phi3 = phi;
        }
      }
    }
  }
  return best;
}

ScenarioReport evaluate_scenario(const MeasurementTriple& triple,
                                 const std::array<JointParams, 3>& params, const QubitState& s) {
  ScenarioReport r;
  r.eta = triple.eta;
  r.window = specker_window(triple);
  r.eta_in_window = r.window.contains(triple.eta);
  r.state = s;

  std::array<JointPovm, 3> joints;
  for (std::size_t k = 0; k < kPairs.size(); ++k) {
    const auto [i, j] = kPairs[k];
    const auto mi = triple.observable(i);
    const auto mj = triple.observable(j);
    r.diagnostics[k] = {kPairs[k], params[k], check_joint_params(mi, mj, params[k])};
    joints[k] = construct_joint(mi, mj, params[k]);
  }

  const ViolationTerms terms = violation_terms(params, s, triple.eta);
  r.r3_quantum = r3_quantum(s, joints);
  r.bound_lsw = lsw_bound(triple.eta);
  r.violation_s = r.r3_quantum - r.bound_lsw;
  r.violation_c = 6.0 * r.violation_s;
  r.lambda_rho = terms.lambda_rho;
  r.sum_alpha = terms.sum_alpha;
  r.a_total = terms.a_total;
  r.violated = terms.violated;
  if (r.a_total.norm() > kTolAlg) r.optimal_state = optimal_state(r.a_total);
  return r;
}

}  // namespace specker

#include "specker/joint_povm.hpp"

#include "specker/error.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace specker {

namespace {

void require_shared_eta(const NoisyObservable& mi, const NoisyObservable& mj) {
  if (std::abs(mi.eta() - mj.eta()) > kTolAlg) {
    std::ostringstream msg;
    msg << "joint measurement needs equal sharpness, got " << mi.eta() << " and " << mj.eta();
    throw Error(ErrorKind::MismatchedSharpness, msg.str());
  }
}

}  // namespace

const QubitEffect& JointPovm::effect(int x_i, int x_j) const {
  if (x_i > 0) return x_j > 0 ? g_pp : g_pm;
  return x_j > 0 ? g_mp : g_mm;
}

std::string JointValidity::describe() const {
  std::ostringstream out;
  out << "alpha window [" << window.alpha_min << ", " << window.alpha_max << "]";
  if (lower_slack < -kTolAlg) out << "; lower bound violated by " << -lower_slack;
  if (upper_slack < -kTolAlg) out << "; upper bound violated by " << -upper_slack;
  return out.str();
}

AlphaWindow validity_window(const NoisyObservable& mi, const NoisyObservable& mj,
                            const Vec3& a) {
  require_shared_eta(mi, mj);
  const double eta = mi.eta();
  const Vec3& ni = mi.axis().vec();
  const Vec3& nj = mj.axis().vec();
  const double c = ni.dot(nj);
  const double a2 = a.squaredNorm();
  const double lo = 2.0 * eta * eta * (1.0 + c) + a2 + 2.0 * eta * std::abs((ni + nj).dot(a));
  const double hi = 2.0 * eta * eta * (1.0 - c) + a2 + 2.0 * eta * std::abs((ni - nj).dot(a));
  return {std::sqrt(std::max(0.0, lo)), 2.0 - std::sqrt(std::max(0.0, hi))};
}

JointValidity check_joint_params(const NoisyObservable& mi, const NoisyObservable& mj,
                                 const JointParams& p) {
  JointValidity v;
  v.window = validity_window(mi, mj, p.a);
  v.lower_slack = p.alpha - v.window.alpha_min;
  v.upper_slack = v.window.alpha_max - p.alpha;
  return v;
}

JointPovm construct_joint(const NoisyObservable& mi, const NoisyObservable& mj,
                          const JointParams& p) {
  const JointValidity validity = check_joint_params(mi, mj, p);
  if (!validity.valid()) {
    std::ostringstream msg;
    msg << "joint parameters alpha=" << p.alpha << " invalid: " << validity.describe();
    throw Error(ErrorKind::InvalidJointParams, msg.str());
  }

  const double eta = mi.eta();
  const Vec3 sum = eta * (mi.axis().vec() + mj.axis().vec());
  const Vec3 diff = eta * (mi.axis().vec() - mj.axis().vec());

  const Vec3 a_pp = 0.5 * (sum - p.a);
  const Vec3 a_pm = 0.5 * (diff + p.a);
  const Vec3 a_mp = 0.5 * (-diff + p.a);
  const Vec3 a_mm = 0.5 * (-sum - p.a);

  // Marginal constraints on the Bloch parts.
  const Vec3 ni = eta * mi.axis().vec();
  const Vec3 nj = eta * mj.axis().vec();
  const double residual = std::max({(a_pp + a_pm - ni).norm(), (a_mp + a_mm + ni).norm(),
                                    (a_mp + a_pp - nj).norm(), (a_mm + a_pm + nj).norm(),
                                    (a_pm + a_mp - p.a).norm()});
  if (residual > kTolAlg) {
    throw std::logic_error("joint POVM Bloch parts violate the marginal identities");
  }

  JointPovm g;
  g.g_pp = {p.alpha / 2.0, a_pp};
  g.g_pm = {1.0 - p.alpha / 2.0, a_pm};
  g.g_mp = {1.0 - p.alpha / 2.0, a_mp};
  g.g_mm = {p.alpha / 2.0, a_mm};
  return g;
}

QubitEffect anticorrelation_effect(const JointPovm& g) { return g.g_pm + g.g_mp; }

bool check_marginals(const JointPovm& g, const NoisyObservable& mi, const NoisyObservable& mj) {
  return approx_equal(g.g_pp + g.g_pm, mi.plus()) && approx_equal(g.g_mp + g.g_mm, mi.minus()) &&
         approx_equal(g.g_pp + g.g_mp, mj.plus()) && approx_equal(g.g_pm + g.g_mm, mj.minus());
}

}  // namespace specker

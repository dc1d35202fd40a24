#include "specker/error.hpp"
#include "specker/joint_povm.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace specker;
using namespace specker::testing;

namespace {

const double kSqrt13 = std::sqrt(13.0);

// Trine pair 1, 2 in the ZX plane.
NoisyObservable trine_obs(int k, double eta) {
  return MeasurementTriple::trine(eta).observable(k);
}

// Dense sum of effects, used to check marginals without the Bloch-form code.
Eigen::Matrix2cd dense(const QubitEffect& a, const QubitEffect& b) {
  return as_matrix(a) + as_matrix(b);
}

}  // namespace

TEST(joint_povm, optimal_trine_parameters_give_valid_povm) {
  const double eta = 2.0 / 3.0;
  const JointParams p{7.0 / 9.0, Vec3(0, kSqrt13 / 9.0, 0)};
  for (const auto& [i, j] : kPairs) {
    const auto mi = trine_obs(i, eta);
    const auto mj = trine_obs(j, eta);
    JointPovm g;
    ASSERT_NO_THROW(g = construct_joint(mi, mj, p));
    EXPECT_TRUE(g.as_povm().is_valid());
    EXPECT_TRUE(check_marginals(g, mi, mj));
    // The lower inequality is saturated.
    EXPECT_NEAR(validity_window(mi, mj, p.a).alpha_min, 7.0 / 9.0, 1e-12);
  }
}

TEST(joint_povm, zero_sharpness_is_uniform) {
  const NoisyObservable mi(UnitAxis::z(), 0.0);
  const NoisyObservable mj(UnitAxis::x(), 0.0);
  const auto g = construct_joint(mi, mj, {1.0, Vec3::Zero()});
  for (const auto& e : g.effects()) EXPECT_TRUE(approx_equal(e, {0.5, Vec3::Zero()}));
}

TEST(joint_povm, window_with_zero_a) {
  Rng rng(21);
  for (int n = 0; n < 100; ++n) {
    const double eta = uniform(rng, 0.0, 1.0);
    const NoisyObservable mi(random_axis(rng), eta);
    const NoisyObservable mj(random_axis(rng), eta);
    const double c = mi.axis().dot(mj.axis());
    const auto w = validity_window(mi, mj, Vec3::Zero());
    EXPECT_NEAR(w.alpha_min, std::sqrt(2.0) * eta * std::sqrt(std::max(0.0, 1.0 + c)), 1e-12);
    EXPECT_NEAR(w.alpha_max, 2.0 - std::sqrt(2.0) * eta * std::sqrt(std::max(0.0, 1.0 - c)),
                1e-12);
  }
}

TEST(joint_povm, antiparallel_sharp_pair_window) {
  const NoisyObservable mi(UnitAxis::z(), 1.0);
  const NoisyObservable mj(-UnitAxis::z(), 1.0);
  const auto w = validity_window(mi, mj, Vec3::Zero());
  EXPECT_NEAR(w.alpha_min, 0.0, 1e-12);
  EXPECT_NEAR(w.alpha_max, 0.0, 1e-12);
  EXPECT_FALSE(w.empty());
  // Only alpha = 0 works: G++ = G-- = 0, G+- and G-+ are the projectors.
  const auto g = construct_joint(mi, mj, {0.0, Vec3::Zero()});
  EXPECT_TRUE(approx_equal(g.g_pp, {0.0, Vec3::Zero()}));
  EXPECT_TRUE(approx_equal(g.g_pm, mi.plus()));
}

TEST(joint_povm, errors_report_slacks) {
  const double eta = 2.0 / 3.0;
  const auto mi = trine_obs(0, eta);
  const auto mj = trine_obs(1, eta);
  try {
    construct_joint(mi, mj, {0.5, Vec3(0, kSqrt13 / 9.0, 0)});
    FAIL() << "expected InvalidJointParams";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::InvalidJointParams);
    EXPECT_NE(std::string(e.what()).find("lower bound violated"), std::string::npos) << e.what();
  }
  const auto v = check_joint_params(mi, mj, {0.5, Vec3(0, kSqrt13 / 9.0, 0)});
  EXPECT_NEAR(v.lower_slack, 0.5 - 7.0 / 9.0, 1e-12);
  EXPECT_FALSE(v.valid());

  const NoisyObservable other(UnitAxis::x(), 0.5);
  try {
    construct_joint(mi, other, {1.0, Vec3::Zero()});
    FAIL() << "expected MismatchedSharpness";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::MismatchedSharpness);
  }
  EXPECT_THROW(validity_window(mi, other, Vec3::Zero()), Error);
}

TEST(joint_povm, anticorrelation_effect_examples) {
  const NoisyObservable mi(UnitAxis::z(), 0.3);
  const NoisyObservable mj(UnitAxis::x(), 0.3);
  const auto half = anticorrelation_effect(construct_joint(mi, mj, {1.0, Vec3::Zero()}));
  EXPECT_TRUE(approx_equal(half, {1.0, Vec3::Zero()}));

  const double eta = 2.0 / 3.0;
  const auto g = construct_joint(trine_obs(0, eta), trine_obs(2, eta),
                                 {7.0 / 9.0, Vec3(0, kSqrt13 / 9.0, 0)});
  const auto anti = anticorrelation_effect(g);
  EXPECT_NEAR(anti.c, 11.0 / 9.0, 1e-15);
  EXPECT_NEAR((anti.v - Vec3(0, kSqrt13 / 9.0, 0)).norm(), 0.0, 1e-15);
}

// Marginals and completeness checked on dense matrices.
TEST(joint_povm, random_valid_params_pass_matrix_checks) {
  Rng rng(22);
  int tested = 0;
  while (tested < 1000) {
    const auto joint = random_valid_joint(rng);
    if (!joint) continue;
    ++tested;
    const auto& [mi, mj, p] = *joint;
    const auto g = construct_joint(mi, mj, p);

    Eigen::Matrix2cd total = Eigen::Matrix2cd::Zero();
    for (const auto& e : g.effects()) {
      ASSERT_TRUE(matrix_effect_valid(as_matrix(e), kTolAlg));
      total += as_matrix(e);
    }
    ASSERT_TRUE(total.isApprox(Eigen::Matrix2cd::Identity(), kTolAlg));
    ASSERT_LT((dense(g.g_pp, g.g_pm) - as_matrix(mi.plus())).norm(), kTolAlg);
    ASSERT_LT((dense(g.g_mp, g.g_mm) - as_matrix(mi.minus())).norm(), kTolAlg);
    ASSERT_LT((dense(g.g_pp, g.g_mp) - as_matrix(mj.plus())).norm(), kTolAlg);
    ASSERT_LT((dense(g.g_pm, g.g_mm) - as_matrix(mj.minus())).norm(), kTolAlg);
    ASSERT_LT((as_matrix(anticorrelation_effect(g)) - dense(g.g_pm, g.g_mp)).norm(), kTolAlg);
    ASSERT_TRUE(check_marginals(g, mi, mj));
  }
}

// The window is exactly the set of alpha for which construction succeeds.
TEST(joint_povm, window_matches_construction) {
  Rng rng(23);
  int inside = 0;
  int outside = 0;
  for (int n = 0; n < 2000; ++n) {
    const double eta = uniform(rng, 0.0, 1.0);
    const NoisyObservable mi(random_axis(rng), eta);
    const NoisyObservable mj(random_axis(rng), eta);
    const Vec3 a = uniform(rng, 0.0, 0.8) * random_direction(rng);
    const auto w = validity_window(mi, mj, a);
    const double alpha = uniform(rng, -0.2, 2.2);
    const bool in_window = alpha >= w.alpha_min - kTolAlg && alpha <= w.alpha_max + kTolAlg;
    bool built = true;
    try {
      const auto g = construct_joint(mi, mj, {alpha, a});
      // Validity from the dense matrices, independent of the window formula.
      for (const auto& e : g.effects()) ASSERT_TRUE(matrix_effect_valid(as_matrix(e), 1e-10));
    } catch (const Error& e) {
      ASSERT_EQ(e.kind(), ErrorKind::InvalidJointParams);
      built = false;
    }
    ASSERT_EQ(built, in_window) << "alpha=" << alpha << " window=[" << w.alpha_min << ", "
                                << w.alpha_max << "]";

    // Dense check of the same alpha, bypassing construct_joint.
    const Vec3 s = eta * (mi.axis().vec() + mj.axis().vec());
    const Vec3 d = eta * (mi.axis().vec() - mj.axis().vec());
    const QubitEffect raw[4] = {{alpha / 2, 0.5 * (s - a)},
                                {1 - alpha / 2, 0.5 * (d + a)},
                                {1 - alpha / 2, 0.5 * (-d + a)},
                                {alpha / 2, 0.5 * (-s - a)}};
    bool dense_ok = true;
    for (const auto& e : raw) dense_ok = dense_ok && matrix_effect_valid(as_matrix(e), kTolAlg);
    ASSERT_EQ(dense_ok, in_window);
    (in_window ? inside : outside)++;
  }
  EXPECT_GT(inside, 100);
  EXPECT_GT(outside, 100);
}

TEST(joint_povm, swapping_pair_transposes_outcomes) {
  Rng rng(24);
  int tested = 0;
  while (tested < 200) {
    const auto joint = random_valid_joint(rng);
    if (!joint) continue;
    ++tested;
    const auto& [mi, mj, p] = *joint;
    const auto gij = construct_joint(mi, mj, p);
    const auto gji = construct_joint(mj, mi, p);
    for (int xi : {1, -1}) {
      for (int xj : {1, -1}) ASSERT_TRUE(approx_equal(gji.effect(xj, xi), gij.effect(xi, xj)));
    }
  }
}

TEST(joint_povm, perturbed_effect_breaks_marginals) {
  const double eta = 2.0 / 3.0;
  const auto mi = trine_obs(0, eta);
  const auto mj = trine_obs(1, eta);
  auto g = construct_joint(mi, mj, {7.0 / 9.0, Vec3(0, kSqrt13 / 9.0, 0)});
  EXPECT_TRUE(check_marginals(g, mi, mj));
  g.g_pp.v += Vec3(0, 1e-6, 0);
  EXPECT_FALSE(check_marginals(g, mi, mj));
}

#include "specker/error.hpp"
#include "specker/lsw.hpp"

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

using namespace specker;
using namespace specker::testing;

namespace {

const double kSqrt13 = std::sqrt(13.0);

std::array<JointParams, 3> trine_params() {
  const JointParams p{7.0 / 9.0, Vec3(0, kSqrt13 / 9.0, 0)};
  return {p, p, p};
}

std::array<JointPovm, 3> build(const MeasurementTriple& t, const std::array<JointParams, 3>& p) {
  std::array<JointPovm, 3> g;
  for (int k = 0; k < 3; ++k) {
    const auto [i, j] = kPairs[k];
    g[k] = construct_joint(t.observable(i), t.observable(j), p[k]);
  }
  return g;
}

// Random triple, eta and per-pair parameters inside each alpha window.
struct RandomScenario {
  MeasurementTriple triple;
  std::array<JointParams, 3> params;
  QubitState state = QubitState::maximally_mixed();
};

std::optional<RandomScenario> random_scenario(Rng& rng) {
  RandomScenario s;
  s.triple = MeasurementTriple{{random_axis(rng), random_axis(rng), random_axis(rng)},
                               uniform(rng, 0.0, 1.0)};
  for (int k = 0; k < 3; ++k) {
    const auto [i, j] = kPairs[k];
    const Vec3 a = uniform(rng, 0.0, 0.5) * random_direction(rng);
    const auto w = validity_window(s.triple.observable(i), s.triple.observable(j), a);
    if (w.empty()) return std::nullopt;
    s.params[k] = {uniform(rng, w.alpha_min, std::max(w.alpha_min, w.alpha_max)), a};
  }
  s.state = random_state(rng);
  return s;
}

// Trine just above the lower window edge with a shortened a and alpha drawn
// from the opened window, so a fair share of these violate the bound.
RandomScenario near_optimal_trine(Rng& rng) {
  const double eta = uniform(rng, 2.0 / 3.0, 0.69);
  RandomScenario s;
  s.triple = MeasurementTriple::trine(eta);
  const double c = -0.5;
  const double root = std::sqrt(1 + std::pow(eta, 4) * c * c - 2 * eta * eta);
  for (int k = 0; k < 3; ++k) {
    const Vec3 a(0, uniform(rng, 0.85, 1.0) * root, 0);
    const auto w = validity_window(s.triple.observable(kPairs[k][0]),
                                   s.triple.observable(kPairs[k][1]), a);
    s.params[k] = {w.alpha_min + uniform(rng, 0.0, 0.1) * (w.alpha_max - w.alpha_min), a};
  }
  s.state = QubitState::from_bloch(uniform(rng, 0.8, 1.0) * Vec3::UnitY());
  return s;
}

}  // namespace

TEST(lsw, r3_examples_at_trine_optimum) {
  const auto t = MeasurementTriple::trine(2.0 / 3.0);
  const auto g = build(t, trine_params());
  EXPECT_NEAR(r3_quantum(QubitState::maximally_mixed(), g), 11.0 / 18.0, 1e-15);
  const double r3 = r3_quantum(QubitState::from_bloch(Vec3::UnitY()), g);
  EXPECT_NEAR(r3, 0.8114, 5e-5);
  EXPECT_NEAR(r3, 7.0 / 9.0 + (kSqrt13 / 3.0 - 1.0) / 6.0, 1e-12);
}

TEST(lsw, r3_is_half_for_pure_noise) {
  const auto t = MeasurementTriple::orthogonal(0.0);
  const JointParams p{1.0, Vec3::Zero()};
  const auto g = build(t, {p, p, p});
  Rng rng(31);
  for (int n = 0; n < 100; ++n) EXPECT_NEAR(r3_quantum(random_state(rng), g), 0.5, 1e-15);
}

TEST(lsw, bound_examples) {
  EXPECT_NEAR(lsw_bound(2.0 / 3.0), 7.0 / 9.0, 1e-15);
  EXPECT_NEAR(lsw_bound(1.0), kKsBound, 1e-15);
  EXPECT_EQ(lsw_bound(0.0), 1.0);
  EXPECT_THROW(lsw_bound(1.5), Error);
}

TEST(lsw, violation_terms_at_trine_optimum) {
  const auto v = violation_terms(trine_params(), QubitState::from_bloch(Vec3::UnitY()), 2.0 / 3.0);
  EXPECT_NEAR(v.sum_alpha, 7.0 / 3.0, 1e-15);
  EXPECT_NEAR(v.lambda_rho, -kSqrt13 / 3.0, 1e-15);
  EXPECT_NEAR((v.a_total - Vec3(0, kSqrt13 / 3.0, 0)).norm(), 0.0, 1e-15);
  EXPECT_TRUE(v.violated);

  const auto mixed = violation_terms(trine_params(), QubitState::maximally_mixed(), 2.0 / 3.0);
  EXPECT_EQ(mixed.lambda_rho, 0.0);
  EXPECT_FALSE(mixed.violated);

  const JointParams zero{1.0, Vec3::Zero()};
  Rng rng(32);
  for (int n = 0; n < 20; ++n) {
    EXPECT_EQ(violation_terms({zero, zero, zero}, random_state(rng), 0.5).lambda_rho, 0.0);
  }
}

TEST(lsw, optimal_state_examples) {
  EXPECT_NEAR((optimal_state(Vec3(0, 0.3, 0)).bloch() - Vec3::UnitY()).norm(), 0.0, 1e-15);
  EXPECT_NEAR((optimal_state(Vec3(0, 0, 1)).bloch() - Vec3::UnitZ()).norm(), 0.0, 1e-15);
  try {
    optimal_state(Vec3::Zero());
    FAIL() << "expected ZeroVector";
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ZeroVector);
  }
}

// (R3 > bound) <=> (sum alpha + lambda < 2 eta), compared through the
// independently computed R3 from dense matrices.
TEST(lsw, violation_formulations_agree) {
  Rng rng(33);
  int tested = 0;
  int violated = 0;
  int near_boundary = 0;
  while (tested < 1000) {
    auto s = tested % 4 == 3 ? std::optional(near_optimal_trine(rng)) : random_scenario(rng);
    if (!s) continue;
    // Bias toward the interesting region: take the optimal state for a_total.
    Vec3 total = Vec3::Zero();
    for (const auto& p : s->params) total += p.a;
    if (tested % 2 == 0 && total.norm() > kTolAlg) s->state = optimal_state(total);
    ++tested;

    const auto g = build(s->triple, s->params);
    double r3_dense = 0.0;
    for (const auto& gij : g) {
      r3_dense += trace_probability(as_matrix(s->state), as_matrix(gij.g_pm) + as_matrix(gij.g_mp));
    }
    r3_dense /= 3.0;
    const double eta = s->triple.eta;
    const double gap = r3_dense - lsw_bound(eta);
    const auto v = violation_terms(s->params, s->state, eta);
    ASSERT_NEAR(v.r3, r3_dense, kTolAlg);
    ASSERT_NEAR(6.0 * gap, 2.0 * eta - v.sum_alpha - v.lambda_rho, 1e-12);
    if (std::abs(gap) > kTolAlg) {
      ASSERT_EQ(v.violated, gap > 0.0);
    } else {
      ++near_boundary;
    }
    if (v.violated) ++violated;
  }
  EXPECT_GT(violated, 10);
  EXPECT_LT(near_boundary, 5);
}

TEST(lsw, lambda_range_and_extremes) {
  Rng rng(34);
  int tested = 0;
  while (tested < 500) {
    const auto s = random_scenario(rng);
    if (!s) continue;
    ++tested;
    const auto v = violation_terms(s->params, s->state, s->triple.eta);
    const double norm = v.a_total.norm();
    ASSERT_LE(std::abs(v.lambda_rho), norm + kTolAlg);
    if (norm > 1e-6) {
      const Vec3 n = v.a_total / norm;
      const auto lo = violation_terms(s->params, QubitState::from_bloch(n), s->triple.eta);
      const auto hi = violation_terms(s->params, QubitState::from_bloch(-n), s->triple.eta);
      ASSERT_NEAR(lo.lambda_rho, -norm, kTolAlg);
      ASSERT_NEAR(hi.lambda_rho, norm, kTolAlg);
    }
  }
}

TEST(lsw, r3_is_affine_in_bloch_vector) {
  Rng rng(35);
  int tested = 0;
  while (tested < 200) {
    const auto s = random_scenario(rng);
    if (!s) continue;
    ++tested;
    const auto g = build(s->triple, s->params);
    const Vec3 r1 = random_state(rng).bloch();
    const Vec3 r2 = random_state(rng).bloch();
    const double w = uniform(rng, 0.0, 1.0);
    const double mix = r3_quantum(QubitState::from_bloch(w * r1 + (1 - w) * r2), g);
    const double lin = w * r3_quantum(QubitState::from_bloch(r1), g) +
                       (1 - w) * r3_quantum(QubitState::from_bloch(r2), g);
    ASSERT_NEAR(mix, lin, 1e-14);
  }
}

TEST(lsw, si_sum_examples) {
  EXPECT_NEAR(si_necessary_sum({-0.5, -0.5, -0.5}), 1.5, 1e-15);
  EXPECT_NEAR(si_necessary_sum({0.0, 0.0, 0.0}), 3.0 * std::cos(std::numbers::pi / 4), 1e-15);
}

TEST(lsw, no_si_scan_stays_above_one) {
  double previous = 10.0;
  for (int res : {25, 50, 100}) {
    const auto r = no_si_scan(res);
    EXPECT_GT(r.min_value, 1.0) << "resolution " << res;
    EXPECT_LT(r.min_value, previous) << "resolution " << res;
    previous = r.min_value;
    // The reported angles reproduce the reported value.
    const double c12 = std::cos(r.theta12);
    const double c13 = std::cos(r.theta13);
    const double c23 = std::sin(r.theta12) * std::sin(r.theta13) * std::cos(r.phi3) + c12 * c13;
    EXPECT_NEAR(si_necessary_sum({c12, c13, c23}), r.min_value, 1e-12);
  }
  EXPECT_LT(previous, 1.02);
  EXPECT_THROW(no_si_scan(2), Error);
}

TEST(lsw, evaluate_scenario_report) {
  const auto t = MeasurementTriple::trine(0.68);
  const double eta = 0.68;
  const double c = -0.5;
  const double radicand = 1 + std::pow(eta, 4) * c * c - 2 * eta * eta;
  const JointParams p{1 + eta * eta * c, Vec3(0, std::sqrt(radicand), 0)};
  const auto r = evaluate_scenario(t, {p, p, p}, QubitState::from_bloch(Vec3::UnitY()));
  EXPECT_TRUE(r.eta_in_window);
  EXPECT_NEAR(r.violation_s, r.r3_quantum - r.bound_lsw, kTolAlg);
  EXPECT_NEAR(r.violation_c, 6.0 * r.violation_s, kTolAlg);
  EXPECT_GT(r.violation_s, 0.0);
  EXPECT_TRUE(r.violated);
  ASSERT_TRUE(r.optimal_state.has_value());
  for (const auto& d : r.diagnostics) EXPECT_TRUE(d.validity.valid());

  // a = 0 leaves alpha in [eta, 2 - sqrt 3 eta] for trine pairs.
  const JointParams zero{0.75, Vec3::Zero()};
  const auto flat = evaluate_scenario(t, {zero, zero, zero}, QubitState::maximally_mixed());
  EXPECT_FALSE(flat.optimal_state.has_value());
  EXPECT_FALSE(flat.violated);
}

#include "specker/ont_model.hpp"

#include "specker/error.hpp"
#include "specker/joint_measurability.hpp"
#include "specker/linear_feasibility.hpp"

#include <cmath>
#include <sstream>

namespace specker {

namespace {

void check_eta(double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw Error(ErrorKind::InvalidArgument, "sharpness outside [0, 1]");
  }
}

void check_binary(int x) {
  if (x != 0 && x != 1) throw Error(ErrorKind::InvalidArgument, "outcome must be 0 or 1");
}

std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

void require_consistent(const std::array<double, 2>& a, const std::array<double, 2>& b,
                        const char* variable) {
  if (std::abs(a[0] - b[0]) > kTolAlg || std::abs(a[1] - b[1]) > kTolAlg) {
    std::ostringstream msg;
    msg << "marginals of " << variable << " disagree: (" << a[0] << ", " << a[1] << ") vs ("
        << b[0] << ", " << b[1] << ")";
    throw Error(ErrorKind::InconsistentMarginals, msg.str());
  }
}

}  // namespace

int to_binary_label(int pm_outcome) {
  if (pm_outcome == 1) return 0;
  if (pm_outcome == -1) return 1;
  throw Error(ErrorKind::InvalidArgument, "outcome label must be +1 or -1");
}

int to_pm_label(int binary_outcome) {
  check_binary(binary_outcome);
  return binary_outcome == 0 ? 1 : -1;
}

std::array<HiddenAssignment, 8> HiddenAssignment::all() {
  std::array<HiddenAssignment, 8> out;
  for (int idx = 0; idx < 8; ++idx) {
    out[idx].x = {(idx >> 2) & 1, (idx >> 1) & 1, idx & 1};
  }
  return out;
}

std::array<double, 2> PairwiseDistribution::marginal(int which) const {
  if (which == 0) return {p[0] + p[1], p[2] + p[3]};
  return {p[0] + p[2], p[1] + p[3]};
}

bool PairwiseDistribution::is_valid(double tol) const {
  double total = 0.0;
  for (double v : p) {
    if (!(v >= -tol)) return false;
    total += v;
  }
  return std::abs(total - 1.0) <= tol;
}

double response_single(double eta, int x, const HiddenAssignment& lambda, int k) {
  check_eta(eta);
  check_binary(x);
  return eta * (lambda.x.at(k) == x ? 1.0 : 0.0) + 0.5 * (1.0 - eta);
}

double response_pair(double eta, int x_i, int x_j, const HiddenAssignment& lambda, int i, int j) {
  check_eta(eta);
  check_binary(x_i);
  check_binary(x_j);
  const double deterministic = (lambda.x.at(i) == x_i && lambda.x.at(j) == x_j) ? 1.0 : 0.0;
  const double coin = x_i != x_j ? 0.5 : 0.0;
  return eta * deterministic + (1.0 - eta) * coin;
}

PairwiseDistribution response_pair_table(double eta, const HiddenAssignment& lambda, int i,
                                         int j) {
  PairwiseDistribution d;
  for (int xi = 0; xi < 2; ++xi) {
    for (int xj = 0; xj < 2; ++xj) d.p[2 * xi + xj] = response_pair(eta, xi, xj, lambda, i, j);
  }
  return d;
}

ModelMaximum model_r3_max(double eta) {
  check_eta(eta);
  ModelMaximum best{-1.0, {}};
  for (const auto& lambda : HiddenAssignment::all()) {
    double total = 0.0;
    for (const auto& [i, j] : kPairs) total += response_pair_table(eta, lambda, i, j).anticorrelation();
    const double r3 = total / 3.0;
    if (r3 > best.r3) best = {r3, lambda};
  }
  return best;
}

bool joint_feasibility(const PairwiseDistribution& d12, const PairwiseDistribution& d13,
                       const PairwiseDistribution& d23) {
  for (const auto* d : {&d12, &d13, &d23}) {
    if (!d->is_valid()) {
      throw Error(ErrorKind::InvalidArgument, "pairwise table is not a probability distribution");
    }
  }
  require_consistent(d12.marginal(0), d13.marginal(0), "X1");
  require_consistent(d12.marginal(1), d23.marginal(0), "X2");
  require_consistent(d13.marginal(1), d23.marginal(1), "X3");

  // Unknown p(x1, x2, x3) at column 4 x1 + 2 x2 + x3; one row per pairwise
  // table entry.
  const std::array<const PairwiseDistribution*, 3> tables = {&d12, &d13, &d23};
  Eigen::MatrixXd A = Eigen::MatrixXd::Zero(12, 8);
  Eigen::VectorXd b(12);
  for (std::size_t pair = 0; pair < kPairs.size(); ++pair) {
    const auto [i, j] = kPairs[pair];
    for (int xi = 0; xi < 2; ++xi) {
      for (int xj = 0; xj < 2; ++xj) {
        const Eigen::Index row = static_cast<Eigen::Index>(4 * pair + 2 * xi + xj);
        for (const auto& lambda : HiddenAssignment::all()) {
          if (lambda.x[i] == xi && lambda.x[j] == xj) {
            A(row, 4 * lambda.x[0] + 2 * lambda.x[1] + lambda.x[2]) = 1.0;
          }
        }
        b(row) = tables[pair]->at(xi, xj);
      }
    }
  }
  return find_nonnegative_solution(A, b, kTolFeas).has_value();
}

PairwiseDistribution quantum_pair_distribution(const JointPovm& g, const QubitState& s) {
  PairwiseDistribution d;
  for (int xi : {1, -1}) {
    for (int xj : {1, -1}) {
      d.p[2 * to_binary_label(xi) + to_binary_label(xj)] = born_probability(s, g.effect(xi, xj));
    }
  }
  return d;
}

std::uint64_t CounterRng::next_u64() {
  const std::uint64_t key = splitmix64(seed_ ^ splitmix64(stream_));
  return splitmix64(key + 0x9E3779B97F4A7C15ULL * counter_++);
}

double CounterRng::next_unit() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

PairwiseDistribution sample_response_pair(double eta, const HiddenAssignment& lambda, int i,
                                          int j, std::uint64_t samples, std::uint64_t seed,
                                          std::uint64_t stream) {
  check_eta(eta);
  if (samples == 0) throw Error(ErrorKind::InvalidArgument, "need at least one sample");
  CounterRng rng(seed, stream);
  std::array<std::uint64_t, 4> counts{};
  for (std::uint64_t n = 0; n < samples; ++n) {
    if (rng.next_unit() < eta) {
      ++counts[2 * lambda.x.at(i) + lambda.x.at(j)];
    } else {
      ++counts[rng.next_unit() < 0.5 ? 1 : 2];
    }
  }
  PairwiseDistribution d;
  for (int k = 0; k < 4; ++k) d.p[k] = static_cast<double>(counts[k]) / samples;
  return d;
}

}  // namespace specker

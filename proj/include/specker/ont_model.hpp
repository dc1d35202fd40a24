#pragma once

// The generalized-noncontextual model for three unsharp binary measurements.
//
// Outcomes are relabeled +1 -> 0, -1 -> 1 at this module's boundary. A hidden
// variable lambda fixes a value X_k(lambda) for each measurement; with
// sharpness eta the single and pairwise response functions are
//
//   p(x_k | M_k; lambda)           = eta [X_k(lambda)] + (1 - eta) (1/2 [0] + 1/2 [1])
//   p(x_i, x_j | M_ij; lambda)     = eta [X_i(lambda)][X_j(lambda)]
//                                    + (1 - eta) (1/2 [0][1] + 1/2 [1][0])

#include "specker/joint_povm.hpp"
#include "specker/qubit_algebra.hpp"

#include <array>
#include <cstdint>

namespace specker {

/// +1 -> 0, -1 -> 1.
int to_binary_label(int pm_outcome);
/// 0 -> +1, 1 -> -1.
int to_pm_label(int binary_outcome);

struct HiddenAssignment {
  std::array<int, 3> x{};

  /// All 8 assignments, index bit (2 - k) holding X_k.
  static std::array<HiddenAssignment, 8> all();
  friend bool operator==(const HiddenAssignment&, const HiddenAssignment&) = default;
};

struct PairwiseDistribution {
  /// p[2 * x_i + x_j].
  std::array<double, 4> p{};

  double at(int x_i, int x_j) const { return p[2 * x_i + x_j]; }
  double anticorrelation() const { return p[1] + p[2]; }
  /// Distribution of x_i (first = 0) or x_j (second = 1).
  std::array<double, 2> marginal(int which) const;
  bool is_valid(double tol = kTolAlg) const;
};

/// eta * delta(x, X_k(lambda)) + (1 - eta) / 2.
double response_single(double eta, int x, const HiddenAssignment& lambda, int k);

double response_pair(double eta, int x_i, int x_j, const HiddenAssignment& lambda, int i, int j);

PairwiseDistribution response_pair_table(double eta, const HiddenAssignment& lambda, int i, int j);

struct ModelMaximum {
  double r3 = 0.0;
  HiddenAssignment argmax;
};

/// Exact maximum over the 8 assignments of (1/3) sum_pairs P(X_i != X_j).
ModelMaximum model_r3_max(double eta);

/// Whether some p(X1, X2, X3) >= 0 reproduces all three pairwise tables.
/// Throws Error(InconsistentMarginals) when shared single-variable marginals
/// disagree by more than kTolAlg, Error(InvalidArgument) for invalid tables.
bool joint_feasibility(const PairwiseDistribution& d12, const PairwiseDistribution& d13,
                       const PairwiseDistribution& d23);

/// Quantum outcome table Tr(rho G_(x_i x_j)) with outcomes relabeled to 0/1.
PairwiseDistribution quantum_pair_distribution(const JointPovm& g, const QubitState& s);

/// Counter-based generator: the k-th draw of (seed, stream) is a pure
/// function of (seed, stream, k), so streams can be sampled in parallel.
class CounterRng {
 public:
  CounterRng(std::uint64_t seed, std::uint64_t stream) : seed_(seed), stream_(stream) {}

  std::uint64_t next_u64();
  /// Uniform in [0, 1) with 53 random bits.
  double next_unit();

 private:
  std::uint64_t seed_;
  std::uint64_t stream_;
  std::uint64_t counter_ = 0;
};

inline constexpr std::uint64_t kDefaultSeed = 0xC0FFEE;

/// Empirical outcome frequencies of the pairwise response function.
PairwiseDistribution sample_response_pair(double eta, const HiddenAssignment& lambda, int i,
                                          int j, std::uint64_t samples,
                                          std::uint64_t seed = kDefaultSeed,
                                          std::uint64_t stream = 0);

}  // namespace specker

#pragma once

#include <Eigen/Core>

#include <optional>

namespace specker {

/// Slack accepted on the phase-one objective when deciding feasibility.
inline constexpr double kTolFeas = 1e-9;

/// Phase-one simplex with Bland's rule: returns some x >= 0 with A x = b
/// (to within tol on the summed infeasibility), or nullopt. Redundant rows in
/// A are fine.
std::optional<Eigen::VectorXd> find_nonnegative_solution(const Eigen::MatrixXd& A,
                                                         const Eigen::VectorXd& b,
                                                         double tol = kTolFeas);

}  // namespace specker

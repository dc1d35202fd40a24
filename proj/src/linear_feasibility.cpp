#include "specker/linear_feasibility.hpp"

#include "specker/error.hpp"

#include <algorithm>
#include <vector>

namespace specker {

namespace {
constexpr double kPivotEps = 1e-12;
}

std::optional<Eigen::VectorXd> find_nonnegative_solution(const Eigen::MatrixXd& A,
                                                         const Eigen::VectorXd& b, double tol) {
  const Eigen::Index m = A.rows();
  const Eigen::Index n = A.cols();
  if (b.size() != m) throw Error(ErrorKind::InvalidArgument, "constraint size mismatch");

  // Tableau [A | I | b] with one artificial per row, plus the reduced-cost row.
  const Eigen::Index rhs = n + m;
  Eigen::MatrixXd t = Eigen::MatrixXd::Zero(m + 1, n + m + 1);
  for (Eigen::Index i = 0; i < m; ++i) {
    const double sign = b(i) < 0.0 ? -1.0 : 1.0;
    t.row(i).head(n) = sign * A.row(i);
    t(i, n + i) = 1.0;
    t(i, rhs) = sign * b(i);
  }
  for (Eigen::Index i = 0; i < m; ++i) {
    t.row(m).head(n) -= t.row(i).head(n);
    t(m, rhs) -= t(i, rhs);
  }

  std::vector<Eigen::Index> basis(m);
  for (Eigen::Index i = 0; i < m; ++i) basis[i] = n + i;

  // Bland's rule cannot cycle, so the loop terminates; the bound is a guard.
  const int max_pivots = 1000;
  for (int it = 0; it < max_pivots; ++it) {
    Eigen::Index enter = -1;
    for (Eigen::Index j = 0; j < n + m; ++j) {
      if (t(m, j) < -kPivotEps) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;

    Eigen::Index leave = -1;
    double best_ratio = 0.0;
    for (Eigen::Index i = 0; i < m; ++i) {
      if (t(i, enter) <= kPivotEps) continue;
      const double ratio = t(i, rhs) / t(i, enter);
      if (leave < 0 || ratio < best_ratio - kPivotEps ||
          (ratio <= best_ratio + kPivotEps && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0) break;  // unbounded direction; cannot happen in phase one

    t.row(leave) /= t(leave, enter);
    for (Eigen::Index i = 0; i <= m; ++i) {
      if (i != leave && t(i, enter) != 0.0) t.row(i) -= t(i, enter) * t.row(leave);
    }
    basis[leave] = enter;
  }

  const double infeasibility = -t(m, rhs);
  if (infeasibility > tol) return std::nullopt;

  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < m; ++i) {
    if (basis[i] < n) x(basis[i]) = std::max(0.0, t(i, rhs));
  }
  return x;
}

}  // namespace specker

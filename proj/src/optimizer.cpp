#include "specker/optimizer.hpp"

#include "specker/error.hpp"
#include "specker/golden_section.hpp"
#include "specker/lsw.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>
#include <vector>

namespace specker {

namespace {

constexpr double kCoplanarTol = 1e-9;
constexpr double kGramSnap = 1e-12;
constexpr int kEtaScanPoints = 256;
constexpr double kEtaTol = 1e-10;

double pair_radicand(double c, double eta) {
  const double e2 = eta * eta;
  return 1.0 + e2 * e2 * c * c - 2.0 * e2;
}

double checked_root(double c, double eta) {
  const double r = pair_radicand(c, eta);
  if (r < -kTolAlg) {
    std::ostringstream msg;
    msg << "pair with cos(theta)=" << c << " is not jointly measurable at eta=" << eta;
    throw Error(ErrorKind::IncompatiblePair, msg.str());
  }
  return std::sqrt(std::max(0.0, r));
}

// Bounds of the alpha window for one pair and a candidate a, without the
// NoisyObservable wrapper (hot loop of the brute-force search).
struct PairGeometry {
  Vec3 sum;   // n_i + n_j
  Vec3 diff;  // n_i - n_j
  double cos;
};

std::pair<double, double> alpha_bounds(const PairGeometry& g, double eta, const Vec3& a) {
  const double a2 = a.squaredNorm();
  const double lo = 2.0 * eta * eta * (1.0 + g.cos) + a2 + 2.0 * eta * std::abs(g.sum.dot(a));
  const double hi = 2.0 * eta * eta * (1.0 - g.cos) + a2 + 2.0 * eta * std::abs(g.diff.dot(a));
  return {std::sqrt(std::max(0.0, lo)), 2.0 - std::sqrt(std::max(0.0, hi))};
}

std::vector<Vec3> fibonacci_directions(int count) {
  std::vector<Vec3> dirs;
  dirs.reserve(count);
  const double golden_angle = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (int k = 0; k < count; ++k) {
    const double z = 1.0 - 2.0 * (k + 0.5) / count;
    const double rho = std::sqrt(std::max(0.0, 1.0 - z * z));
    const double phi = k * golden_angle;
    dirs.emplace_back(rho * std::cos(phi), rho * std::sin(phi), z);
  }
  return dirs;
}

Vec3 any_perpendicular(const Vec3& v) {
  const Vec3 trial = std::abs(v.x()) < 0.9 ? Vec3::UnitX() : Vec3::UnitY();
  return v.cross(trial).normalized();
}

}  // namespace

const char* to_string(EtaMode mode) {
  return mode == EtaMode::Constrained ? "constrained" : "relaxed";
}

double c_max_closed_form(const std::array<double, 3>& cosines, double eta) {
  double c = 2.0 * eta;
  for (double cij : cosines) c += checked_root(cij, eta) - (1.0 + eta * eta * cij);
  return c;
}

JointParams optimal_joint_params(double cos_ij, double eta, const UnitAxis& plane_normal) {
  return {1.0 + eta * eta * cos_ij, checked_root(cos_ij, eta) * plane_normal.vec()};
}

UnitAxis plane_normal(const MeasurementTriple& t) {
  const Vec3& n1 = t.axes[0].vec();
  const Vec3& n2 = t.axes[1].vec();
  const Vec3& n3 = t.axes[2].vec();
  if (std::abs(n1.dot(n2.cross(n3))) > kCoplanarTol) {
    throw Error(ErrorKind::InvalidArgument, "measurement axes are not coplanar");
  }
  // n1 x n2 sets the orientation; the other cross products are parallel or
  // antiparallel to it in a coplanar triple.
  const std::array<Vec3, 3> crosses = {n1.cross(n2), n1.cross(n3), n2.cross(n3)};
  const Vec3* best = &crosses[0];
  for (const auto& c : crosses) {
    if (c.norm() > best->norm() + kCoplanarTol) best = &c;
  }
  if (best->norm() <= kCoplanarTol) return UnitAxis::make(any_perpendicular(n1));
  Vec3 normal = best->normalized();
  if (crosses[0].norm() > kCoplanarTol && normal.dot(crosses[0]) < 0.0) normal = -normal;
  // Adding +0 clears negative zeros, which would otherwise print as "-0".
  return UnitAxis::make(normal + Vec3::Zero());
}

std::array<JointParams, 3> optimal_params(const MeasurementTriple& t) {
  const UnitAxis normal = plane_normal(t);
  std::array<JointParams, 3> params;
  for (std::size_t k = 0; k < kPairs.size(); ++k) {
    params[k] = optimal_joint_params(t.cos_theta(kPairs[k][0], kPairs[k][1]), t.eta, normal);
  }
  return params;
}

MeasurementTriple axes_from_cosines(const std::array<double, 3>& cosines, double eta) {
  const auto [c12, c13, c23] = cosines;
  const double s12 = std::sqrt(std::max(0.0, 1.0 - c12 * c12));
  double x = 0.0;
  if (s12 > kCoplanarTol) {
    x = (c23 - c12 * c13) / s12;
  } else if (std::abs(c23 - c12 * c13) > 1e-9) {
    throw Error(ErrorKind::InvalidArgument, "cosines do not form a valid Gram matrix");
  }
  const double y2 = 1.0 - x * x - c13 * c13;
  if (y2 < -1e-9) {
    throw Error(ErrorKind::InvalidArgument, "cosines do not form a valid Gram matrix");
  }
  // Rounding leaves |y2| ~ 1e-16 for coplanar input, whose square root would
  // lift n3 out of the plane by ~1e-8.
  const double y = y2 <= kGramSnap ? 0.0 : std::sqrt(y2);
  const Vec3 n3(x, y, c13);
  return {{UnitAxis::z(), UnitAxis::make(s12, 0.0, c12), UnitAxis::make(n3.normalized())}, eta};
}

BruteResult c_max_brute(const std::array<double, 3>& cosines, double eta, const GridSpec& grid) {
  for (double c : cosines) {
    if (!pairwise_compatible(eta, std::clamp(c, -1.0, 1.0))) {
      std::ostringstream msg;
      msg << "pair with cos(theta)=" << c << " is not jointly measurable at eta=" << eta;
      throw Error(ErrorKind::IncompatiblePair, msg.str());
    }
  }
  const MeasurementTriple t = axes_from_cosines(cosines, eta);
  std::array<PairGeometry, 3> pairs;
  for (std::size_t k = 0; k < kPairs.size(); ++k) {
    const Vec3& ni = t.axes[kPairs[k][0]].vec();
    const Vec3& nj = t.axes[kPairs[k][1]].vec();
    pairs[k] = {ni + nj, ni - nj, ni.dot(nj)};
  }

  BruteResult out;

  // Perpendicular family: every a_ij = s * u along one direction, so
  // |sum a| = sum |a_ij| and C separates over pairs. For fixed a the
  // objective falls with alpha, so the feasible optimum is alpha_min.
  Vec3 u = t.axes[0].vec().cross(t.axes[1].vec());
  if (u.norm() <= kCoplanarTol) u = t.axes[0].vec().cross(t.axes[2].vec());
  u = u.norm() <= kCoplanarTol ? any_perpendicular(t.axes[0].vec()) : u.normalized();

  out.c_perpendicular = 2.0 * eta;
  for (const auto& g : pairs) {
    double best = -std::numeric_limits<double>::infinity();
    for (int k = 0; k < grid.a_points; ++k) {
      const double s = grid.a_points > 1 ? static_cast<double>(k) / (grid.a_points - 1) : 0.0;
      const auto [lo, hi] = alpha_bounds(g, eta, s * u);
      if (lo <= hi + kTolAlg) best = std::max(best, s - lo);
    }
    out.c_perpendicular += best;
  }

  // Coarse 3-D sample. a = 0 is feasible for every compatible pair.
  const auto dirs = fibonacci_directions(grid.directions);
  struct Sample {
    Vec3 a;
    double alpha;
  };
  std::array<std::vector<Sample>, 3> samples;
  out.c_sampled_bound = 2.0 * eta;
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    samples[k].push_back({Vec3::Zero(), alpha_bounds(pairs[k], eta, Vec3::Zero()).first});
    double best = -samples[k].back().alpha;
    for (const auto& d : dirs) {
      for (int m = 1; m <= grid.magnitudes; ++m) {
        const Vec3 a = (static_cast<double>(m) / grid.magnitudes) * d;
        const auto [lo, hi] = alpha_bounds(pairs[k], eta, a);
        if (lo > hi + kTolAlg) continue;
        samples[k].push_back({a, lo});
        best = std::max(best, a.norm() - lo);
      }
    }
    out.c_sampled_bound += best;
  }

  std::mt19937_64 rng(grid.seed);
  out.c_sampled_max = -std::numeric_limits<double>::infinity();
  for (int n = 0; n < grid.combinations; ++n) {
    Vec3 a_total = Vec3::Zero();
    double sum_alpha = 0.0;
    for (const auto& pool : samples) {
      std::uniform_int_distribution<std::size_t> pick(0, pool.size() - 1);
      const Sample& s = pool[pick(rng)];
      a_total += s.a;
      sum_alpha += s.alpha;
    }
    out.c_sampled_max = std::max(out.c_sampled_max, 2.0 * eta - sum_alpha + a_total.norm());
  }
  return out;
}

EtaOptimum optimize_eta(const std::array<double, 3>& cosines, EtaMode mode) {
  const CompatibilityWindow w = specker_window(cosines);
  double lo = kRelaxedEtaFloor;
  if (mode == EtaMode::Constrained) {
    if (!w.nonempty) {
      std::ostringstream msg;
      msg << "Specker window (" << w.eta_lower << ", " << w.eta_upper << "] is empty";
      throw Error(ErrorKind::EmptyWindow, msg.str());
    }
    lo = w.eta_lower;
  }
  const double hi = w.eta_upper;
  const auto objective = [&](double eta) { return c_max_closed_form(cosines, eta); };

  int best_k = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  const double step = (hi - lo) / (kEtaScanPoints - 1);
  for (int k = 0; k < kEtaScanPoints; ++k) {
    const double eta = k == kEtaScanPoints - 1 ? hi : lo + k * step;
    const double value = objective(eta);
    if (value > best_value) {
      best_value = value;
      best_k = k;
    }
  }

  const double a = best_k == 0 ? lo : lo + (best_k - 1) * step;
  const double b = best_k == kEtaScanPoints - 1 ? hi : std::min(hi, lo + (best_k + 1) * step);
  auto [eta_star, c_star] = golden_section_maximize(objective, a, b, kEtaTol);

  EtaOptimum out{eta_star, c_star, false};
  const double at_lo = objective(lo);
  const double at_hi = objective(hi);
  if (at_lo >= out.c_star) {
    out = {lo, at_lo, true};
  }
  if (at_hi > out.c_star) out = {hi, at_hi, false};
  return out;
}

OptimalConfig optimal_config(const MeasurementTriple& t) {
  OptimalConfig cfg;
  cfg.triple = t;
  cfg.eta = t.eta;
  cfg.params = optimal_params(t);
  cfg.c_max = c_max_closed_form(t.cosines(), t.eta);
  cfg.s_max = cfg.c_max / 6.0;
  Vec3 a_total = Vec3::Zero();
  for (const auto& p : cfg.params) a_total += p.a;
  if (a_total.norm() > kTolAlg) cfg.optimal_state = optimal_state(a_total);
  return cfg;
}

OptimalConfig optimize_geometry(int resolution, EtaMode mode, unsigned threads) {
  if (resolution < 8) {
    throw Error(ErrorKind::InvalidArgument, "geometry resolution must be at least 8");
  }
  const double step = std::numbers::pi / resolution;
  const auto cell_angle = [&](int k) { return (k + 0.5) * step; };

  struct Cell {
    bool feasible = false;
    EtaOptimum opt;
  };
  std::vector<Cell> cells(static_cast<std::size_t>(resolution) * resolution);

  const auto evaluate_rows = [&](int row_begin, int row_end) {
    for (int i = row_begin; i < row_end; ++i) {
      for (int j = 0; j < resolution; ++j) {
        const double t12 = cell_angle(i);
        const double t13 = cell_angle(j);
        const std::array<double, 3> cosines = {std::cos(t12), std::cos(t13), std::cos(t12 + t13)};
        Cell& cell = cells[static_cast<std::size_t>(i) * resolution + j];
        try {
          cell.opt = optimize_eta(cosines, mode);
          cell.feasible = true;
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::EmptyWindow) throw;
        }
      }
    }
  };

  threads = std::max(1U, std::min<unsigned>(threads, static_cast<unsigned>(resolution)));
  if (threads == 1) {
    evaluate_rows(0, resolution);
  } else {
    std::vector<std::jthread> workers;
    const int chunk = (resolution + static_cast<int>(threads) - 1) / static_cast<int>(threads);
    for (int begin = 0; begin < resolution; begin += chunk) {
      workers.emplace_back(evaluate_rows, begin, std::min(resolution, begin + chunk));
    }
  }

  // Sequential reduction in (t12, t13) order keeps the result independent of
  // the thread count.
  const Cell* best = nullptr;
  std::size_t best_index = 0;
  for (std::size_t idx = 0; idx < cells.size(); ++idx) {
    if (!cells[idx].feasible) continue;
    if (best == nullptr || cells[idx].opt.c_star > best->opt.c_star + 1e-12) {
      best = &cells[idx];
      best_index = idx;
    }
  }
  if (best == nullptr) {
    throw Error(ErrorKind::EmptyWindow, "no grid cell has a nonempty Specker window");
  }

  const double t12 = cell_angle(static_cast<int>(best_index / resolution));
  const double t13 = cell_angle(static_cast<int>(best_index % resolution));
  OptimalConfig cfg = optimal_config(
      MeasurementTriple::from_angles(t12, t13, std::numbers::pi, best->opt.eta_star));
  cfg.theta12 = t12;
  cfg.theta13 = t13;
  cfg.eta_is_supremum = best->opt.open_boundary_supremum;
  return cfg;
}

}  // namespace specker

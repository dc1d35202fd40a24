#pragma once

#include <cmath>
#include <utility>

namespace specker {

/// Golden-section search for the maximum of a unimodal f on [lo, hi].
/// Returns (argmax, f(argmax)) once the bracket is narrower than tol.
template <typename F>
std::pair<double, double> golden_section_maximize(F&& f, double lo, double hi, double tol,
                                                  int max_iterations = 200) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c);
  double fd = f(d);
  for (int it = 0; it < max_iterations && (b - a) > tol; ++it) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }
  const double x = 0.5 * (a + b);
  return {x, f(x)};
}

}  // namespace specker

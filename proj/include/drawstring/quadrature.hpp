#pragma once

#include <cmath>
#include <cstddef>
#include <utility>

namespace drawstring {

// Adaptive Simpson quadrature with absolute tolerance. The integrand must be
// finite on [a, b]. Recursion bisects until the Richardson-corrected panel
// error estimate drops below the local tolerance share.
template <class F>
double adaptive_simpson(F&& f, double a, double b, double abs_tol = 1e-12,
                        int max_depth = 48) {
  struct Impl {
    const F& f;
    int max_depth;
    double run(double a, double b, double fa, double fm, double fb, double whole,
               double tol, int depth) const {
      const double m = 0.5 * (a + b);
      const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
      const double flm = f(lm), frm = f(rm);
      const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
      const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
      const double delta = left + right - whole;
      if (depth >= max_depth || std::fabs(delta) <= 15.0 * tol)
        return left + right + delta / 15.0;
      return run(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1) +
             run(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1);
    }
  };
  if (!(b > a)) return 0.0;
  const double m = 0.5 * (a + b);
  const double fa = f(a), fm = f(m), fb = f(b);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return Impl{f, max_depth}.run(a, b, fa, fm, fb, whole, abs_tol, 0);
}

// Same integral split at interior breakpoints (sorted, clipped to [a,b]);
// keeps the adaptive recursion away from kinks of piecewise integrands.
template <class F, class It>
double adaptive_simpson_split(F&& f, double a, double b, It first, It last,
                              double abs_tol = 1e-12) {
  double total = 0.0;
  double lo = a;
  for (It it = first; it != last; ++it) {
    const double c = *it;
    if (c <= lo || c >= b) continue;
    total += adaptive_simpson(f, lo, c, abs_tol);
    lo = c;
  }
  total += adaptive_simpson(f, lo, b, abs_tol);
  return total;
}

}  // namespace drawstring

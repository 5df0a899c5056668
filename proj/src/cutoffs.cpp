#include "drawstring/cutoffs.hpp"

#include <cmath>

namespace drawstring {
namespace {

constexpr double kMollifiedMinSlack = 23.37;

// Bang-bang quadratic ramp rising 0 -> 1 on [1/2, 1]: derivative is the
// triangle of peak 4 at t = 3/4, |second derivative| = 16 on the ramp.
double ramp(double t, int order) {
  if (t <= 0.5) return 0.0;
  if (t < 0.75) {
    const double d = t - 0.5;
    switch (order) {
      case 0: return 8.0 * d * d;
      case 1: return 16.0 * d;
      default: return 16.0;
    }
  }
  if (t < 1.0) {
    const double d = 1.0 - t;
    switch (order) {
      case 0: return 1.0 - 8.0 * d * d;
      case 1: return 16.0 * d;
      default: return -16.0;
    }
  }
  return order == 0 ? 1.0 : 0.0;
}

// exp-based smoothstep S(x) = F(x)/(F(x)+F(1-x)), F(x) = exp(-1/x), rising
// 0 -> 1 on [0, 1]; all derivatives vanish at the endpoints.
double smoothstep(double x, int order) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return order == 0 ? 1.0 : 0.0;
  const double fa = std::exp(-1.0 / x);
  const double fb = std::exp(-1.0 / (1.0 - x));
  const double den = fa + fb;
  const double s = fa / den;
  if (order == 0) return s;
  const double x2 = x * x, y = 1.0 - x, y2 = y * y;
  const double fa1 = fa / x2;
  const double fb1 = -fb / y2;
  const double s1 = (fa1 * fb - fa * fb1) / (den * den);
  if (order == 1) return s1;
  const double fa2 = fa * (1.0 - 2.0 * x) / (x2 * x2);
  const double fb2 = fb * (1.0 - 2.0 * y) / (y2 * y2);
  const double num1 = fa1 * fb - fa * fb1;
  const double num2 = fa2 * fb - fa * fb2;
  const double den1 = fa1 + fb1;
  return (num2 * den - 2.0 * num1 * den1) / (den * den * den);
}

double mollified_ramp(double t, int order) {
  // map the [1/2, 1] window onto the smoothstep's [0, 1]
  const double x = 2.0 * (t - 0.5);
  const double scale = order == 0 ? 1.0 : (order == 1 ? 2.0 : 4.0);
  return scale * smoothstep(x, order);
}

}  // namespace

CutoffFn::CutoffFn(CutoffKind kind, CutoffSmoothness smoothness, double slack)
    : kind_(kind), smoothness_(smoothness), slack_(slack) {}

double CutoffFn::eval(double t, int order) const {
  if (order < 0 || order > 2)
    throw std::invalid_argument("CutoffFn: derivative order must be 0, 1 or 2");
  if (t < 0.0) throw std::invalid_argument("CutoffFn: t must be nonnegative");
  const double up = smoothness_ == CutoffSmoothness::C2PiecewiseQuadratic
                        ? ramp(t, order)
                        : mollified_ramp(t, order);
  if (kind_ == CutoffKind::RisingZeta) return up;
  return order == 0 ? 1.0 - up : -up;
}

CutoffFn make_cutoff(CutoffKind kind, CutoffSmoothness smoothness,
                     double slack) {
  if (smoothness == CutoffSmoothness::C2PiecewiseQuadratic)
    return CutoffFn(kind, smoothness, 0.0);
  if (slack < 0.0) slack = 24.0;
  if (slack < kMollifiedMinSlack)
    throw std::invalid_argument(
        "make_cutoff: mollified variant needs slack >= 23.37 (its second "
        "derivative peaks at ~39.37)");
  return CutoffFn(kind, smoothness, slack);
}

double cutoff_eval(const CutoffFn& f, double t, int order) {
  return f.eval(t, order);
}

}  // namespace drawstring

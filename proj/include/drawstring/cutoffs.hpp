#pragma once

#include <stdexcept>

namespace drawstring {

enum class CutoffKind { RisingZeta, FallingEta };
enum class CutoffSmoothness { C2PiecewiseQuadratic, MollifiedSmooth };

// Transition functions on [0, inf): zeta rises 0 -> 1 across [1/2, 1], eta
// falls 1 -> 0. The piecewise-quadratic variant is the bang-bang ramp that
// attains the bounds 0 <= zeta' <= 4, |zeta''| <= 16 with zero slack; the
// mollified variant is C-infinity (exp-based smoothstep on the same window)
// and carries slack kappa: its second derivative peaks at ~39.37, so
// kappa >= 23.37 is required for |zeta''| <= 16 + kappa to hold.
class CutoffFn {
 public:
  CutoffFn(CutoffKind kind, CutoffSmoothness smoothness, double slack);

  // order-th derivative at t >= 0; order must be 0, 1 or 2.
  double eval(double t, int order) const;
  double operator()(double t) const { return eval(t, 0); }

  CutoffKind kind() const { return kind_; }
  CutoffSmoothness smoothness() const { return smoothness_; }
  double slack() const { return slack_; }

 private:
  CutoffKind kind_;
  CutoffSmoothness smoothness_;
  double slack_;
};

// Factory per the construction above. For MollifiedSmooth the default slack
// is 24; values below the certifiable minimum are rejected.
CutoffFn make_cutoff(CutoffKind kind, CutoffSmoothness smoothness,
                     double slack = -1.0);

double cutoff_eval(const CutoffFn& f, double t, int order);

}  // namespace drawstring

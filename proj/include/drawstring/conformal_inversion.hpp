#pragma once

#include <string>
#include <vector>

namespace drawstring {

// phi(r) = 1/2 log((1+delta)/(sin^2 r + delta)) + 1 on the unit round
// 2-sphere; >= 1 on (0, pi). delta = 0 has a logarithmic pole at r = 0.
double phi_delta(double r, double delta);
double phi_delta_deriv(double r, double delta, int order);  // order 0..2

struct SupersolutionReport {
  double max_residual_round = 0.0;      // max of Delta_0 phi - phi
  double max_residual_conformal = 0.0;  // max of Delta_g~ phi^-1 - K~ phi^-1
  double worst_sign_product = 0.0;      // min of residual1 * residual2
  long n_points = 0;
  bool passed = false;
};

// (a) Delta_0 phi <= phi on the round sphere (radial Laplacian, analytic
// derivatives); (b) the phi^4-conformal counterpart evaluated by finite
// differences, with the sign equivalence residual1 * residual2 >= 0.
SupersolutionReport supersolution_check(double delta, long n_grid);

struct InversionCurve {
  double delta = 0.0;
  std::vector<double> r;        // increasing
  std::vector<double> r_tilde;  // int_0^r phi
  std::vector<double> f;        // phi(r) sin r
  std::vector<double> u;        // -log phi(r)

  double u_at_rtilde(double rt) const;
  double f_at_rtilde(double rt) const;
  double r_at_rtilde(double rt) const;
  double rt_min() const { return r_tilde.front(); }
  double rt_max() const { return r_tilde.back(); }
};

// Tabulates r_tilde(r) by cumulative quadrature on a log-spaced r grid from
// r_min to pi/2. For delta = 0 the head integral over [0, r_min] uses the
// analytic antiderivative of -log r + 1 (switchover documented in the
// implementation).
InversionCurve build_inversion_curve(double delta, double r_min,
                                     int n_points);

struct AsymptoticsLevel {
  double r_tilde, A, B;
};

struct AsymptoticsReport {
  std::vector<AsymptoticsLevel> levels;  // dyadic, decreasing r_tilde
  double final_A = 0.0;
  double final_B = 0.0;
  bool decreasing_tail = false;  // |A|, |B+1| decreasing over last 5 levels
  bool passed = false;
};

// A = u + loglog(1/rt) -> 0 and B = (f/rt - 1) log(1/rt) -> -1 along dyadic
// rt levels from rt_coarse down to the curve floor; thresholds |A| < 0.05,
// |B+1| < 0.05 at the finest level. Requires the curve to reach
// rt <= 1e-6 (range error otherwise).
AsymptoticsReport asymptotics_check(const InversionCurve& curve,
                                    double rt_coarse = 1e-6);

}  // namespace drawstring

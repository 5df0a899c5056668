#pragma once

#include <functional>
#include <vector>

#include "drawstring/models.hpp"

namespace drawstring {

// Closed-form scalar curvature of the prototype warped metric
// e^{-2u}(dr^2 + f^2 dtheta^2) + e^{2u} dt^2 with f = r(1 - c1/log(1/r)),
// u = -c2 loglog(1/r). Throws std::domain_error at the pole log(1/r) <= c1.
double prototype_scalar(double r, double c1, double c2);

// Generic metric callback for the finite-difference oracle: fills the dim x
// dim coefficient matrix (row-major) at chart coordinates x.
using MetricFn = std::function<void(const double* x, double* g)>;

// Second-order finite-difference scalar curvature from metric coefficients
// alone. Throws std::runtime_error if the coefficient matrix is close to
// singular (condition number > 1e12) at the center point.
double fd_scalar_generic(const MetricFn& metric, const double* x, double step,
                         int dim);

double fd_scalar(const ModelMetric& model, const ChartPoint& x, double step);

// Richardson extrapolation over steps {s, s/2}: two calls, O(step^4) error.
double fd_scalar_richardson(const ModelMetric& model, const ChartPoint& x,
                            double step);

// Step policy for radius r: min(r/4, max(1e-7, 1e-2 r)). Keeps the stencil
// strictly inside the chart near the axis.
double fd_step(double r);

// Closed-form scalar curvature of the diagonal r-only presets, assembled
// from the traced Gauss route; exact on baselines (no cancellation in the
// base terms) and noise-free near r = 0.
double warped_scalar(const ModelMetric& model, const ChartPoint& x);

// H' = e^{pu} (H + h_r/h) for drawstring presets (baseline H in closed form).
double mean_curvature_prime(const ModelMetric& model, double r, double sigma);

// |LHS - RHS| of the traced Gauss identity R = R_r - (H^2 + |A|^2 + 2 dH/dn)
// at the r-tube: LHS by fd_scalar, R_r by a 2-dimensional fd on the induced
// slice metric, extrinsic terms in closed form.
double gauss_consistency(const ModelMetric& model, double r, double sigma,
                         double step);

struct JacobiSolution {
  std::vector<double> grid;      // increasing, starts at 0
  std::vector<double> h_values;  // h(0) = 0
  std::vector<double> hr_values; // h_r(0) = 1
};

// RK4 integration of h'' = -K(r) h with h(0) = 0, h'(0) = 1.
JacobiSolution jacobi_solve(const std::function<double(double)>& K,
                            double r_max, int steps);

// Intercept of the linear fit of (h^2 - r^2)/r^4 against r over the solution
// nodes with r in (0, r_fit]; estimates the quartic Taylor coefficient of
// h^2, which equals -K(0)/3.
double jacobi_quartic_coefficient(const JacobiSolution& sol, double r_fit);

}  // namespace drawstring

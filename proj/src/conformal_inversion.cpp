#include "drawstring/conformal_inversion.hpp"

#include <cmath>
#include <stdexcept>

#include "drawstring/quadrature.hpp"

namespace drawstring {

double phi_delta(double r, double delta) {
  if (delta < 0) throw std::invalid_argument("phi_delta: delta must be >= 0");
  if (delta == 0.0 && r == 0.0)
    throw std::domain_error("phi_delta: pole at r = 0 when delta = 0");
  if (!(r >= 0) || !(r < 3.14159265358979323846 + 1e-12))
    throw std::domain_error("phi_delta: r out of (0, pi)");
  const double s = std::sin(r);
  return 0.5 * std::log((1.0 + delta) / (s * s + delta)) + 1.0;
}

double phi_delta_deriv(double r, double delta, int order) {
  if (order < 0 || order > 2)
    throw std::invalid_argument("phi_delta_deriv: order must be 0..2");
  if (order == 0) return phi_delta(r, delta);
  const double sr = std::sin(r), cr = std::cos(r);
  const double q = sr * sr + delta;
  if (q == 0.0) throw std::domain_error("phi_delta_deriv: pole");
  const double qp = 2.0 * sr * cr;
  if (order == 1) return -qp / (2.0 * q);
  const double qpp = 2.0 * (cr * cr - sr * sr);
  return -(qpp * q - qp * qp) / (2.0 * q * q);
}

SupersolutionReport supersolution_check(double delta, long n_grid) {
  if (!(delta > 0))
    throw std::invalid_argument("supersolution_check: delta must be > 0");
  SupersolutionReport rep;
  rep.max_residual_round = -std::numeric_limits<double>::infinity();
  rep.max_residual_conformal = -std::numeric_limits<double>::infinity();
  rep.worst_sign_product = std::numeric_limits<double>::infinity();
  const double pi = 3.14159265358979323846;
  const double a = 0.01, b = pi - 0.01;
  for (long k = 0; k <= n_grid; ++k) {
    const double r = a + (b - a) * k / n_grid;
    const double phi = phi_delta(r, delta);
    const double p1 = phi_delta_deriv(r, delta, 1);
    const double p2 = phi_delta_deriv(r, delta, 2);
    const double cot = std::cos(r) / std::sin(r);
    const double res1 = p2 + cot * p1 - phi;  // Delta_0 phi - phi

    // conformal side by central differences of phi itself: psi = 1/phi,
    // sigma = 2 log phi; Delta_{g~} psi - K~ psi with g~ = phi^4 g_0 reads
    // phi^-4 [Delta_0 psi - (1 - Delta_0 sigma) psi]
    const double hh = 1e-5;
    const auto lap0 = [&](auto&& fn) {
      const double f0 = fn(r), fp = fn(r + hh), fm = fn(r - hh);
      const double d1 = (fp - fm) / (2.0 * hh);
      const double d2 = (fp - 2.0 * f0 + fm) / (hh * hh);
      return d2 + cot * d1;
    };
    const auto inv_phi = [&](double rr) { return 1.0 / phi_delta(rr, delta); };
    const auto sig = [&](double rr) { return 2.0 * std::log(phi_delta(rr, delta)); };
    const double res2 =
        std::pow(phi, -4.0) * (lap0(inv_phi) - (1.0 - lap0(sig)) / phi);

    rep.max_residual_round = std::max(rep.max_residual_round, res1);
    rep.max_residual_conformal = std::max(rep.max_residual_conformal, res2);
    rep.worst_sign_product = std::min(rep.worst_sign_product, res1 * res2);
    rep.n_points++;
  }
  const double tol = 1e-7;
  rep.passed = rep.max_residual_round <= tol &&
               rep.max_residual_conformal <= tol &&
               rep.worst_sign_product >= -tol;
  return rep;
}

InversionCurve build_inversion_curve(double delta, double r_min,
                                     int n_points) {
  if (!(r_min > 0) && delta == 0.0)
    throw std::invalid_argument("build_inversion_curve: r_min > 0 if delta=0");
  if (n_points < 16)
    throw std::invalid_argument("build_inversion_curve: n_points >= 16");
  const double pi_half = 1.5707963267948966;
  InversionCurve c;
  c.delta = delta;
  c.r.resize(n_points);
  const double lo = std::log(r_min), hi = std::log(pi_half);
  for (int k = 0; k < n_points; ++k)
    c.r[k] = std::exp(lo + (hi - lo) * k / (n_points - 1));

  // head over [0, r_min]: for delta = 0, phi = -log r + 1 - log(sinc r) and
  // int_0^a (-log rho + 1) drho = a (log(1/a) + 2); the sinc correction is
  // O(a^3) and is dropped below the 1e-25 scale at the default a = 1e-8.
  double head;
  if (delta == 0.0) {
    head = r_min * (std::log(1.0 / r_min) + 2.0);
  } else {
    head = adaptive_simpson(
        [&](double rho) { return rho > 0 ? phi_delta(rho, delta)
                                         : phi_delta(1e-300, delta); },
        0.0, r_min, 1e-15);
  }

  c.r_tilde.resize(n_points);
  c.f.resize(n_points);
  c.u.resize(n_points);
  double acc = head;
  double prev = r_min;
  for (int k = 0; k < n_points; ++k) {
    acc += adaptive_simpson(
        [&](double rho) { return phi_delta(rho, delta); }, prev, c.r[k],
        1e-15 * std::max(1.0, acc));
    prev = c.r[k];
    c.r_tilde[k] = acc;
    const double phi = phi_delta(c.r[k], delta);
    c.f[k] = phi * std::sin(c.r[k]);
    c.u[k] = -std::log(phi);
  }
  return c;
}

namespace {

size_t bracket(const std::vector<double>& rt, double target) {
  if (target < rt.front() || target > rt.back())
    throw std::out_of_range("InversionCurve: r_tilde outside tabulated range");
  size_t lo = 0, hi = rt.size() - 1;
  while (hi - lo > 1) {
    const size_t mid = (lo + hi) / 2;
    (rt[mid] <= target ? lo : hi) = mid;
  }
  return lo;
}

// linear interpolation in log(r_tilde)
double interp_lin(const std::vector<double>& rt, const std::vector<double>& y,
                  double target) {
  const size_t lo = bracket(rt, target);
  const double t = (std::log(target) - std::log(rt[lo])) /
                   (std::log(rt[lo + 1]) - std::log(rt[lo]));
  return y[lo] * (1.0 - t) + y[lo + 1] * t;
}

// log-log interpolation for quantities that scale like r_tilde itself
double interp_loglog(const std::vector<double>& rt,
                     const std::vector<double>& y, double target) {
  const size_t lo = bracket(rt, target);
  const double t = (std::log(target) - std::log(rt[lo])) /
                   (std::log(rt[lo + 1]) - std::log(rt[lo]));
  return std::exp(std::log(y[lo]) * (1.0 - t) + std::log(y[lo + 1]) * t);
}

}  // namespace

double InversionCurve::u_at_rtilde(double rt) const {
  return interp_lin(r_tilde, u, rt);
}
double InversionCurve::f_at_rtilde(double rt) const {
  return interp_loglog(r_tilde, f, rt);
}
double InversionCurve::r_at_rtilde(double rt) const {
  // log-log seed, then Newton on r_tilde(r) - rt with the exact integrand
  const size_t lo = bracket(r_tilde, rt);
  double rr = interp_loglog(r_tilde, r, rt);
  for (int it = 0; it < 4; ++it) {
    const double val =
        r_tilde[lo] + adaptive_simpson(
                          [&](double rho) { return phi_delta(rho, delta); },
                          r[lo], rr, 1e-16 * std::max(1.0, r_tilde[lo]));
    rr -= (val - rt) / phi_delta(rr, delta);
  }
  return rr;
}

AsymptoticsReport asymptotics_check(const InversionCurve& curve,
                                    double rt_coarse) {
  if (curve.delta != 0.0)
    throw std::invalid_argument("asymptotics_check: delta = 0 curve needed");
  if (curve.rt_min() > 1e-6)
    throw std::out_of_range(
        "asymptotics_check: curve must reach r_tilde <= 1e-6");
  AsymptoticsReport rep;
  double rt = rt_coarse;
  while (rt >= curve.rt_min() * 1.02) {
    const double u = curve.u_at_rtilde(rt);
    const double fv = curve.f_at_rtilde(rt);
    const double s_t = std::log(1.0 / rt);
    const double A = u + std::log(s_t);
    const double B = (fv / rt - 1.0) * s_t;
    rep.levels.push_back({rt, A, B});
    rt *= 0.5;
  }
  if (rep.levels.size() < 6)
    throw std::out_of_range("asymptotics_check: insufficient dyadic range");
  const auto& last = rep.levels.back();
  rep.final_A = last.A;
  rep.final_B = last.B;
  rep.decreasing_tail = true;
  const size_t n = rep.levels.size();
  for (size_t k = n - 5; k < n; ++k) {
    if (std::fabs(rep.levels[k].A) > std::fabs(rep.levels[k - 1].A))
      rep.decreasing_tail = false;
    if (std::fabs(rep.levels[k].B + 1.0) > std::fabs(rep.levels[k - 1].B + 1.0))
      rep.decreasing_tail = false;
  }
  rep.passed = std::fabs(rep.final_A) < 0.05 &&
               std::fabs(rep.final_B + 1.0) < 0.05 && rep.decreasing_tail;
  return rep;
}

}  // namespace drawstring

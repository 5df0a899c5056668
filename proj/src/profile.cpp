#include "drawstring/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "drawstring/quadrature.hpp"
#include "json.hpp"

namespace drawstring {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

double loglog_inv(double r) { return std::log(std::log(1.0 / r)); }

CutoffFn default_zeta(CutoffSmoothness s) {
  return make_cutoff(CutoffKind::RisingZeta, s);
}
CutoffFn default_eta(CutoffSmoothness s) {
  return make_cutoff(CutoffKind::FallingEta, s);
}
}  // namespace

void GeometryConstants::validate() const {
  if (n < 3) throw std::invalid_argument("GeometryConstants: n must be >= 3");
  if (C1 < 0 || C2 < 0 || C3 < 0 || C4 < 0 || C5 < 0 || R0 < 0)
    throw std::invalid_argument("GeometryConstants: C1..C5, R0 must be >= 0");
  if (!(r_I > 0) || !(r0 > 0) || r0 > r_I)
    throw std::invalid_argument("GeometryConstants: need 0 < r0 <= r_I");
  if (!(sigma_area > 0))
    throw std::invalid_argument("GeometryConstants: sigma_area must be > 0");
}

BoundaryFunction BoundaryFunction::constant(double v) {
  BoundaryFunction b;
  b.samples = {v};
  b.sup_abs = std::fabs(v);
  b.c2_norm_sq = v * v;
  b.validate();
  return b;
}

BoundaryFunction BoundaryFunction::sampled(std::vector<double> values,
                                           double period, double c2_norm_sq) {
  BoundaryFunction b;
  b.samples = std::move(values);
  b.period = period;
  double sup = 0.0;
  for (double v : b.samples) sup = std::max(sup, std::fabs(v));
  b.sup_abs = sup;
  b.c2_norm_sq = c2_norm_sq;
  b.validate();
  return b;
}

void BoundaryFunction::validate() const {
  if (samples.empty())
    throw std::invalid_argument("BoundaryFunction: no samples");
  for (double v : samples)
    if (v > 0.0)
      throw std::invalid_argument("BoundaryFunction: v0 must be <= 0");
  if (!(period > 0))
    throw std::invalid_argument("BoundaryFunction: period must be > 0");
}

double BoundaryFunction::operator()(double sigma) const {
  const size_t m = samples.size();
  if (m == 1) return samples[0];
  double x = std::fmod(sigma / period, 1.0);
  if (x < 0) x += 1.0;
  const double pos = x * static_cast<double>(m);
  const size_t i = static_cast<size_t>(pos) % m;
  const double frac = pos - std::floor(pos);
  return samples[i] * (1.0 - frac) + samples[(i + 1) % m] * frac;
}

double BoundaryFunction::inf() const {
  return *std::min_element(samples.begin(), samples.end());
}

// ---------------------------------------------------------------------------

DrawstringProfile::DrawstringProfile(const GeometryConstants& consts,
                                     const BoundaryFunction& v0, double eps,
                                     double r1, double c1, TinyRadius r2,
                                     double c2, CutoffSmoothness smoothness)
    : consts_(consts),
      v0_(v0),
      eps_(eps),
      r1_(r1),
      c1_(c1),
      c2_(c2),
      r2_(r2),
      zeta_(default_zeta(smoothness)),
      eta_(default_eta(smoothness)) {
  consts_.validate();
  v0_.validate();
  if (!(r1_ > 0) || r1_ >= 0.3)
    throw std::invalid_argument("DrawstringProfile: need 0 < r1 < 0.3");
  if (c1_ < 0) throw std::invalid_argument("DrawstringProfile: c1 < 0");
  if (r2_.representable() && r2_.value > r1_ / 64.0)
    throw std::invalid_argument("DrawstringProfile: r2 must be <= r1/64");

  // eta transition of the w-integrand lives on [r1/8, r1/4]
  const double lo = r1_ / 8.0, hi = r1_ / 4.0;
  const double kink = 3.0 * r1_ / 16.0;
  const auto eta_piece = [this](double rho) {
    return eta_.eval(4.0 * rho / r1_, 0) / (rho * std::log(1.0 / rho));
  };
  jeta_full_ = adaptive_simpson_split(eta_piece, lo, hi, &kink, &kink + 1,
                                      1e-14);

  if (r2_.representable()) {
    const double r2v = r2_.value;
    const auto zeta_piece = [this, r2v](double rho) {
      return zeta_.eval(rho / (4.0 * r2v), 0) / (rho * std::log(1.0 / rho));
    };
    const double zk = 3.0 * r2v;
    tzeta_full_ = adaptive_simpson_split(zeta_piece, 2.0 * r2v, 4.0 * r2v, &zk,
                                         &zk + 1, 1e-15);
    inv_log_r2_ = 1.0 / r2_.log_inv;
    const auto psi_integrand = [this, r2v](double rho) {
      if (rho <= 0.0) return 0.0;
      const double z = zeta_.eval(rho / r2v, 0);
      const double s = std::log(1.0 / rho);
      return z / (rho * s * s) + (1.0 - z) * rho / r2v;
    };
    const double pk[2] = {0.5 * r2v, 0.75 * r2v};
    psi_head_ = adaptive_simpson_split(psi_integrand, 0.0, r2v, pk, pk + 2,
                                       1e-15);
  }
  mid_full_ = lam4() - std::log(std::log(8.0 / r1_));

  if (c2_ <= 0)
    throw std::invalid_argument("DrawstringProfile: c2 must be positive");
  i_total_ = c2_ * (tzeta_full_ + mid_full_ + jeta_full_);
}

double DrawstringProfile::lam4() const {
  if (r2_.representable()) return loglog_inv(4.0 * r2_.value);
  return r2_.loglog_inv;  // log(4) shift is below double resolution here
}

double DrawstringProfile::C6() const {
  return consts_.C4 * (consts_.p() + 1) * v0_.sup_abs +
         consts_.C5 * (1.0 + v0_.c2_norm_sq);
}

std::vector<double> DrawstringProfile::breakpoints() const {
  // transition-window endpoints plus the interior kink at 3/4 of each
  // window, where the bang-bang quadratic's second derivative jumps
  std::vector<double> b;
  if (r2_.representable()) {
    const double r2v = r2_.value;
    b.insert(b.end(), {0.5 * r2v, 0.75 * r2v, r2v,        // zeta(r/r2)
                       2.0 * r2v, 3.0 * r2v, 4.0 * r2v}); // zeta(r/4r2)
  }
  b.insert(b.end(), {r1_ / 8.0, 3.0 * r1_ / 16.0, r1_ / 4.0,  // eta(4r/r1)
                     r1_ / 2.0, 0.75 * r1_, r1_});            // eta(r/r1)
  return b;
}

double DrawstringProfile::zeta_over_r2(double r, int order) const {
  if (!r2_.representable()) {
    if (order == 0) return r > 0.0 ? 1.0 : 0.0;
    return 0.0;
  }
  return zeta_.eval(r / r2_.value, order);
}

double DrawstringProfile::zeta_over_4r2(double r) const {
  if (!r2_.representable()) return r > 0.0 ? 1.0 : 0.0;
  return zeta_.eval(r / (4.0 * r2_.value), 0);
}

// psi(r) = int_0^r [zeta(rho/r2)/(rho log^2(1/rho)) + (1-zeta(rho/r2)) rho/r2].
// Above r2 the integrand is exactly 1/(rho s^2), whose antiderivative is
// -1/s; psi_head_ carries the quadrature over [0, r2].
double DrawstringProfile::psi(double r) const {
  if (r <= 0.0) return 0.0;
  if (r2_.representable() && r < r2_.value) {
    const double r2v = r2_.value;
    const auto integrand = [this, r2v](double rho) {
      if (rho <= 0.0) return 0.0;
      const double z = zeta_.eval(rho / r2v, 0);
      const double s = std::log(1.0 / rho);
      return z / (rho * s * s) + (1.0 - z) * rho / r2v;
    };
    const double pk[2] = {0.5 * r2v, 0.75 * r2v};
    return adaptive_simpson_split(integrand, 0.0, r, pk, pk + 2, 1e-15);
  }
  return psi_head_ + 1.0 / std::log(1.0 / r) - inv_log_r2_;
}

double DrawstringProfile::psi_p(double r) const {
  if (r <= 0.0) return 0.0;
  const double z = zeta_over_r2(r, 0);
  const double s = std::log(1.0 / r);
  double out = z / (r * s * s);
  if (z < 1.0 && r2_.representable()) out += (1.0 - z) * r / r2_.value;
  return out;
}

double DrawstringProfile::psi_pp(double r) const {
  if (r <= 0.0) return r2_.representable() ? 1.0 / r2_.value : 0.0;
  const double s = std::log(1.0 / r);
  const double z = zeta_over_r2(r, 0);
  double out = z * (-1.0 / (r * r * s * s) + 2.0 / (r * r * s * s * s));
  if (r2_.representable()) {
    const double r2v = r2_.value;
    const double zp = zeta_over_r2(r, 1);
    if (zp != 0.0) out += zp / r2v * (1.0 / (r * s * s) - r / r2v);
    if (z < 1.0) out += (1.0 - z) / r2v;
  }
  return out;
}

double DrawstringProfile::h(double r) const {
  if (r < 0) throw std::invalid_argument("h: r must be >= 0");
  if (r >= r1_) return 1.0;
  return 1.0 - c1_ * eta_.eval(r / r1_, 0) * psi(r);
}

double DrawstringProfile::h_r(double r) const {
  if (r >= r1_) return 0.0;
  const double e0 = eta_.eval(r / r1_, 0);
  const double e1 = eta_.eval(r / r1_, 1);
  return -c1_ * (e1 / r1_ * psi(r) + e0 * psi_p(r));
}

double DrawstringProfile::h_rr(double r) const {
  if (r >= r1_) return 0.0;
  const double e0 = eta_.eval(r / r1_, 0);
  const double e1 = eta_.eval(r / r1_, 1);
  const double e2 = eta_.eval(r / r1_, 2);
  return -c1_ * (e2 / (r1_ * r1_) * psi(r) + 2.0 * e1 / r1_ * psi_p(r) +
                 e0 * psi_pp(r));
}

// w through the three-piece decomposition; constant on [0, 2 r2], zero from
// r1/4 on. w(0) equals the normalization integral (= 1 after selection).
double DrawstringProfile::w(double r) const {
  if (r < 0) throw std::invalid_argument("w: r must be >= 0");
  if (r >= r1_ / 4.0) return 0.0;
  if (r == 0.0) return i_total_;
  if (r >= r1_ / 8.0) {
    const auto eta_piece = [this](double rho) {
      return eta_.eval(4.0 * rho / r1_, 0) / (rho * std::log(1.0 / rho));
    };
    const double kink = 3.0 * r1_ / 16.0;
    return c2_ * adaptive_simpson_split(eta_piece, r, r1_ / 4.0, &kink,
                                        &kink + 1, 1e-14);
  }
  const bool above_4r2 =
      !r2_.representable() || r >= 4.0 * r2_.value;
  if (above_4r2) {
    return c2_ * ((loglog_inv(r) - std::log(std::log(8.0 / r1_))) +
                  jeta_full_);
  }
  const double r2v = r2_.value;
  if (r >= 2.0 * r2v) {
    const auto zeta_piece = [this, r2v](double rho) {
      return zeta_.eval(rho / (4.0 * r2v), 0) / (rho * std::log(1.0 / rho));
    };
    const double zk = 3.0 * r2v;
    const double t = adaptive_simpson_split(zeta_piece, r, 4.0 * r2v, &zk,
                                            &zk + 1, 1e-15);
    return c2_ * (t + mid_full_ + jeta_full_);
  }
  return i_total_;
}

double DrawstringProfile::w_r(double r) const {
  if (r <= 0.0 || r >= r1_ / 4.0) return 0.0;
  const double z = zeta_over_4r2(r);
  if (z == 0.0) return 0.0;
  const double e = eta_.eval(4.0 * r / r1_, 0);
  if (e == 0.0) return 0.0;
  return -c2_ * z * e / (r * std::log(1.0 / r));
}

double DrawstringProfile::profile_eval(Which which, double r, int order) const {
  if (order < 0 || order > 2)
    throw std::invalid_argument("profile_eval: order must be 0, 1 or 2");
  if (which == Which::H) {
    switch (order) {
      case 0: return h(r);
      case 1: return h_r(r);
      default: return h_rr(r);
    }
  }
  if (order == 2)
    throw std::invalid_argument("profile_eval: w'' is not provided");
  return order == 0 ? w(r) : w_r(r);
}

// ---------------------------------------------------------------------------
// parameter selection

double DrawstringProfile::select_r1(const GeometryConstants& consts,
                                    const BoundaryFunction& v0, double eps) {
  consts.validate();
  v0.validate();
  if (!(eps > 0)) throw std::invalid_argument("select_r1: eps must be > 0");
  const double C6 = consts.C4 * (consts.p() + 1) * v0.sup_abs +
                    consts.C5 * (1.0 + v0.c2_norm_sq);
  const double M =
      std::max({4.0 * consts.C1, 2.0 * consts.C2 * v0.sup_abs, 2.0 * consts.C3,
                4.0 * C6, 100.0 * (consts.R0 + 1.0)});
  double cap = std::min({1.0 / 100, consts.r0, eps});
  if (consts.C1 > 0) cap = std::min(cap, 1.0 / (2.0 * consts.C1));
  if (consts.C3 > 0) cap = std::min(cap, 1.0 / consts.C3);

  // The bound 1/(r^a s^b) > M over (a,b) in [1/2,2]x[1,5] and all r <= r1 is
  // tightest at the corner (1/2, 5); each member is decreasing in r on
  // (0, r1] once s = log(1/r) >= b/a = 10, so it suffices to enforce
  // s1 >= 10 and the corner value at r1 (compared in logs to avoid
  // overflow).
  double r1 = cap / 2.0;
  const double logM = std::log(M);
  for (int iter = 0; iter < 4000; ++iter) {
    const double s1 = std::log(1.0 / r1);
    const bool ok = s1 > 4.0 && std::log(s1) > 0.0 && s1 >= 10.0 &&
                    (0.5 * s1 - 5.0 * std::log(s1) > logM);
    if (ok) return r1;
    r1 *= 0.5;
  }
  throw std::runtime_error("select_r1: no admissible r1 found");
}

namespace {

// Lemma 4.3(i) quantities on [r1/4, r1], evaluated from the closed-form
// derivatives with zeta == 1 on that interval (valid once r2 <= r1/64).
bool lemma43i_holds(const GeometryConstants& consts, double eps, double r1,
                    double c1, const CutoffFn& eta) {
  const int n_grid = 2048;
  for (int k = 0; k <= n_grid; ++k) {
    const double r = r1 / 4.0 + (r1 - r1 / 4.0) * k / n_grid;
    const double s = std::log(1.0 / r);
    const double psi = 1.0 / s;  // + (psi(r2) - 1/log(1/r2)), below resolution
    const double psip = 1.0 / (r * s * s);
    const double psipp = -1.0 / (r * r * s * s) + 2.0 / (r * r * s * s * s);
    const double e0 = eta.eval(r / r1, 0);
    const double e1 = eta.eval(r / r1, 1);
    const double e2 = eta.eval(r / r1, 2);
    const double h = 1.0 - c1 * e0 * psi;
    const double hr = -c1 * (e1 / r1 * psi + e0 * psip);
    const double hrr =
        -c1 * (e2 / (r1 * r1) * psi + 2.0 * e1 / r1 * psip + e0 * psipp);
    if (-(hrr / h) - 2.0 * hr / (r * h) < -eps / 3.0) return false;
    if (consts.C1 * std::fabs(hr) > eps / 3.0) return false;
    if (consts.C3 * std::fabs(1.0 - h) / r > eps / 3.0) return false;
  }
  return true;
}

}  // namespace

DrawstringProfile::Params DrawstringProfile::select_params(
    const GeometryConstants& consts, const BoundaryFunction& v0, double eps,
    double r1) {
  consts.validate();
  v0.validate();
  const CutoffFn zeta = default_zeta(CutoffSmoothness::C2PiecewiseQuadratic);
  const CutoffFn eta = default_eta(CutoffSmoothness::C2PiecewiseQuadratic);
  const double sup = v0.sup_abs;
  const double p = consts.p();
  const double C6 = consts.C4 * (p + 1) * sup +
                    consts.C5 * (1.0 + v0.c2_norm_sq);

  double c1 = std::min(r1, 1.0 / 100) / 2.0;
  for (int iter = 0; iter < 2000; ++iter, c1 *= 0.5) {
    if (!lemma43i_holds(consts, eps, r1, c1, eta)) continue;

    // Lemma 4.3(ii) cap for c2
    double cap = std::min({std::sqrt(c1 / consts.alpha_n()), c1 / (2.0 * p),
                           1.0 / (2.0 * (consts.n + p)), r1 / p});
    double c2 = cap / (1.0 + sup);

    // Lemma 4.3(iii) cap for r2
    double rstar = r1 / 64.0;
    if (C6 > 0)
      rstar = std::min(rstar, c1 / C6 * std::exp(-2.0 * (consts.n + p) * sup));
    rstar = std::min(rstar, c1 * std::exp(-2.0 * p * sup) /
                                (200.0 * (consts.R0 + 1.0)));

    // shrink c2 until I(r*) < 1 is guaranteed (eq. aux4)
    while (c2 * (loglog_inv(rstar) - loglog_inv(r1)) >= 1.0) c2 *= 0.5;

    // Solve I = 1 for lam = loglog(1/(4 r2)) by bisection; I is monotone
    // increasing in lam with derivative ~ c2.
    const double jeta = [&] {
      const auto f = [&](double rho) {
        return eta.eval(4.0 * rho / r1, 0) / (rho * std::log(1.0 / rho));
      };
      const double kink = 3.0 * r1 / 16.0;
      return adaptive_simpson_split(f, r1 / 8.0, r1 / 4.0, &kink, &kink + 1,
                                    1e-14);
    }();
    const double llog8r1 = std::log(std::log(8.0 / r1));
    const auto I_of = [&](double lam) {
      double t = 0.0;
      TinyRadius four_r2 = TinyRadius::from_loglog_inv(lam);
      if (four_r2.representable()) {
        const double fr = four_r2.value;
        const auto f = [&](double rho) {
          return zeta.eval(rho / fr, 0) / (rho * std::log(1.0 / rho));
        };
        const double zk = 0.75 * fr;
        t = adaptive_simpson_split(f, 0.5 * fr, fr, &zk, &zk + 1, 1e-15);
      }
      return c2 * (t + (lam - llog8r1) + jeta);
    };
    double lo = loglog_inv(4.0 * rstar);
    double hi = std::max(lo + 1.0, 1.0 / c2 + llog8r1 + 1.0);
    if (I_of(lo) >= 1.0)
      throw std::runtime_error(
          "select_params: bisection bracket failure at r2 = r*");
    for (int it = 0; it < 300; ++it) {
      const double mid = 0.5 * (lo + hi);
      const double v = I_of(mid);
      if (std::fabs(v - 1.0) < 1e-13) {
        lo = hi = mid;
        break;
      }
      (v < 1.0 ? lo : hi) = mid;
      if (hi - lo < 1e-13 * std::max(1.0, std::fabs(hi))) break;
    }
    const double lam = 0.5 * (lo + hi);
    TinyRadius four_r2 = TinyRadius::from_loglog_inv(lam);
    TinyRadius r2 = four_r2.representable()
                        ? TinyRadius::from_value(0.25 * four_r2.value)
                        : four_r2;  // same loglog within double resolution

    // re-verify Lemma 4.3(i) against the realized profile
    DrawstringProfile trial(consts, v0, eps, r1, c1, r2, c2);
    bool ok = true;
    for (int k = 0; k <= 2048 && ok; ++k) {
      const double r = r1 / 4.0 + (r1 - r1 / 4.0) * k / 2048.0;
      const double hh = trial.h(r);
      if (-(trial.h_rr(r) / hh) - 2.0 * trial.h_r(r) / (r * hh) < -eps / 3.0)
        ok = false;
      if (consts.C1 * std::fabs(trial.h_r(r)) > eps / 3.0) ok = false;
      if (consts.C3 * std::fabs(1.0 - hh) / r > eps / 3.0) ok = false;
    }
    if (ok) return Params{c1, c2, r2};
  }
  throw std::runtime_error("select_params: no admissible c1 found");
}

DrawstringProfile DrawstringProfile::build(const GeometryConstants& consts,
                                           const BoundaryFunction& v0,
                                           double eps) {
  const double r1 = select_r1(consts, v0, eps);
  const Params p = select_params(consts, v0, eps, r1);
  return DrawstringProfile(consts, v0, eps, r1, p.c1, p.r2, p.c2);
}

DrawstringProfile DrawstringProfile::with_params(
    const GeometryConstants& consts, const BoundaryFunction& v0, double eps,
    double r1, double c1, TinyRadius r2, double c2,
    CutoffSmoothness smoothness) {
  if (c2 > 0)
    return DrawstringProfile(consts, v0, eps, r1, c1, r2, c2, smoothness);
  // solve c2 from I(r2) = 1: c2 = 1/(tzeta + mid + jeta)
  DrawstringProfile tmp(consts, v0, eps, r1, c1, r2, 1.0, smoothness);
  const double denom = tmp.tzeta_full_ + tmp.mid_full_ + tmp.jeta_full_;
  if (!(denom > 0))
    throw std::runtime_error("with_params: degenerate normalization integral");
  return DrawstringProfile(consts, v0, eps, r1, c1, r2, 1.0 / denom,
                           smoothness);
}

DrawstringProfile DrawstringProfile::desk(const GeometryConstants& consts,
                                          const BoundaryFunction& v0,
                                          double eps, double r1,
                                          CutoffSmoothness smoothness) {
  const double c1 = std::min(r1, 1.0 / 100) / 2.0;
  return with_params(consts, v0, eps, r1, c1,
                     TinyRadius::from_value(r1 / 256.0), -1.0, smoothness);
}

DrawstringProfile DrawstringProfile::trivial(const GeometryConstants& consts) {
  GeometryConstants c = consts;
  const double r1 = c.r_I / 2.0;
  return with_params(c, BoundaryFunction::constant(0.0), 1.0, r1, 0.0,
                     TinyRadius::from_value(r1 / 256.0));
}

// ---------------------------------------------------------------------------
// Condition 2.2 and Lemma 4.4 checks

ConditionReport DrawstringProfile::check_condition(long n_grid,
                                                   int n_sigma) const {
  ConditionReport rep;
  const double tol = 1e-12;
  std::vector<double> sigmas;
  for (int k = 0; k < n_sigma; ++k)
    sigmas.push_back(v0_.period * k / n_sigma);

  const auto note = [&](const char* check, double r, double sigma,
                        double margin) {
    if (margin < -tol)
      rep.violations.push_back(ConditionViolation{check, r, sigma, margin});
  };

  double prev_w = -kInf;
  for (long k = 0; k <= n_grid; ++k) {
    // log-spaced grid descending from r_I, plus the exact point r = 0
    double r;
    if (k == n_grid) {
      r = 0.0;
    } else {
      const double t = static_cast<double>(k) / (n_grid - 1);
      r = consts_.r_I * std::pow(1e-14, t);
    }
    rep.n_points++;
    const double hh = h(r);
    const double ww = w(r);
    note("cond2.2: h >= 1/2", r, 0, hh - 0.5);
    note("cond2.2: h <= 2", r, 0, 2.0 - hh);
    note("cond2.2: |w| <= 1", r, 0, 1.0 - std::fabs(ww));
    note("lemma4.4: h <= 1", r, 0, 1.0 - hh);
    note("lemma4.4: h >= 1 - r1/2", r, 0, hh - (1.0 - r1_ / 2.0));
    note("lemma4.4: w >= 0", r, 0, ww);
    if (r > 0.0 && r <= r1_) {
      const double bound = c2_ * (loglog_inv(r) - loglog_inv(r1_));
      note("lemma4.4: w <= c2 (loglog(1/r) - loglog(1/r1))", r, 0, bound - ww);
    }
    // grid descends in r, so w must be non-decreasing along it
    if (ww < prev_w - tol) {
      rep.violations.push_back(
          ConditionViolation{"lemma4.4: w non-increasing", r, 0, ww - prev_w});
    }
    prev_w = ww;
    for (double sig : sigmas) {
      const double uu = u(sig, r);
      note("cond2.2: u <= 0", r, sig, -uu);
      // r e^{-2nu} <= 1 compared in logs
      if (r > 0.0) {
        note("cond2.2: r e^{-2nu} <= 1", r, sig,
             -(std::log(r) - 2.0 * consts_.n * uu));
        if (r <= r1_) {
          // e^{pu} >= log(1/r)^{-r1}  <=>  p u >= -r1 log log(1/r)
          const double s = std::log(1.0 / r);
          note("lemma4.4: e^{pu} >= s^{-r1}", r, sig,
               consts_.p() * uu + r1_ * std::log(s));
        }
      }
    }
  }
  note("lemma4.4: w(0) = 1", 0, 0, 1e-8 - std::fabs(w(0.0) - 1.0));
  return rep;
}

// ---------------------------------------------------------------------------
// JSON serialization

std::string DrawstringProfile::to_json() const {
  nlohmann::json j;
  j["n"] = consts_.n;
  j["eps"] = eps_;
  j["r1"] = r1_;
  j["c1"] = c1_;
  j["c2"] = c2_;
  j["r2"] = r2_.representable() ? r2_.value : 0.0;
  j["r2_loglog_inv"] = r2_.loglog_inv;
  j["consts"] = {{"C1", consts_.C1}, {"C2", consts_.C2}, {"C3", consts_.C3},
                 {"C4", consts_.C4}, {"C5", consts_.C5}, {"R0", consts_.R0},
                 {"r_I", consts_.r_I}, {"r0", consts_.r0},
                 {"sigma_area", consts_.sigma_area}};
  if (v0_.is_constant()) {
    j["v0_kind"] = "constant";
    j["v0_value"] = v0_.samples[0];
  } else {
    j["v0_kind"] = "sampled";
    j["v0_value"] = v0_.samples;
    j["v0_period"] = v0_.period;
  }
  j["v0_c2_norm_sq"] = v0_.c2_norm_sq;
  return j.dump(2);
}

DrawstringProfile DrawstringProfile::from_json(const std::string& text) {
  const nlohmann::json j = nlohmann::json::parse(text);
  GeometryConstants c;
  c.n = j.at("n").get<int>();
  const auto& jc = j.at("consts");
  c.C1 = jc.at("C1");
  c.C2 = jc.at("C2");
  c.C3 = jc.at("C3");
  c.C4 = jc.at("C4");
  c.C5 = jc.at("C5");
  c.R0 = jc.at("R0");
  c.r_I = jc.at("r_I");
  c.r0 = jc.at("r0");
  c.sigma_area = jc.at("sigma_area");
  BoundaryFunction v0;
  if (j.at("v0_kind") == "constant") {
    v0 = BoundaryFunction::constant(j.at("v0_value").get<double>());
    v0.c2_norm_sq = j.at("v0_c2_norm_sq");
  } else {
    v0 = BoundaryFunction::sampled(j.at("v0_value").get<std::vector<double>>(),
                                   j.at("v0_period").get<double>(),
                                   j.at("v0_c2_norm_sq").get<double>());
  }
  const double r2v = j.at("r2").get<double>();
  TinyRadius r2 = r2v > 0.0
                      ? TinyRadius::from_value(r2v)
                      : TinyRadius::from_loglog_inv(j.at("r2_loglog_inv"));
  return DrawstringProfile(c, v0, j.at("eps"), j.at("r1"), j.at("c1"), r2,
                           j.at("c2"));
}

}  // namespace drawstring

#include "drawstring/models.hpp"

#include <cmath>
#include <stdexcept>

namespace drawstring {

namespace {

const CutoffFn& af_eta() {
  static const CutoffFn eta =
      make_cutoff(CutoffKind::FallingEta, CutoffSmoothness::C2PiecewiseQuadratic);
  return eta;
}

[[noreturn]] void bad_coord(const char* what, double v) {
  throw std::domain_error(std::string("metric_at: coordinate ") + what +
                          " = " + std::to_string(v) + " out of range");
}

}  // namespace

std::string preset_name(Preset p) {
  switch (p) {
    case Preset::FlatBaseline: return "flat-baseline";
    case Preset::FlatTorusDrawstring: return "flat-torus";
    case Preset::RoundS3Baseline: return "round-s3-baseline";
    case Preset::RoundS3Drawstring: return "round-s3";
    case Preset::AFSchwarzschildCap: return "af-cap";
    case Preset::ConformalInversionSphere: return "conformal-inversion";
    case Preset::PrototypeWarped: return "prototype";
  }
  return "?";
}

Preset preset_from_name(const std::string& name) {
  for (Preset p : {Preset::FlatBaseline, Preset::FlatTorusDrawstring,
                   Preset::RoundS3Baseline, Preset::RoundS3Drawstring,
                   Preset::AFSchwarzschildCap,
                   Preset::ConformalInversionSphere, Preset::PrototypeWarped})
    if (preset_name(p) == name) return p;
  throw std::invalid_argument("unknown preset: " + name);
}

double vm_eval(double m, double r, int order) {
  if (!(m > 0) || m >= 0.25)
    throw std::invalid_argument("vm_eval: need 0 < m < 1/4");
  if (r < 0) throw std::invalid_argument("vm_eval: r must be >= 0");
  if (order < 0 || order > 1)
    throw std::invalid_argument("vm_eval: order must be 0 or 1");
  if (r <= 0.5) return order == 0 ? 1.0 - 2.0 * m * r * r : -4.0 * m * r;
  if (r >= 1.0) return order == 0 ? 1.0 - 2.0 * m / r : 2.0 * m / (r * r);
  const double e0 = af_eta().eval(r, 0);
  const double e1 = af_eta().eval(r, 1);
  if (order == 0) return 1.0 - e0 * 2.0 * m * r * r - (1.0 - e0) * 2.0 * m / r;
  return -e1 * 2.0 * m * r * r - e0 * 4.0 * m * r + e1 * 2.0 * m / r +
         (1.0 - e0) * 2.0 * m / (r * r);
}

GeometryConstants flat_torus_constants(double t_period) {
  GeometryConstants c;
  c.n = 3;
  c.C1 = c.C2 = c.C3 = c.C4 = c.C5 = 0.0;
  c.R0 = 0.0;
  c.r_I = 1.0 / 128;
  c.r0 = c.r_I;
  c.sigma_area = t_period;
  return c;
}

GeometryConstants round_s3_constants() {
  GeometryConstants c;
  c.n = 3;
  c.C1 = c.C2 = c.C3 = c.C4 = c.C5 = 4.0;
  c.R0 = 6.0;
  c.r_I = 1.0 / 128;
  c.r0 = c.r_I;
  c.sigma_area = 6.283185307179586;
  return c;
}

ModelMetric ModelMetric::flat_baseline(double t_period) {
  ModelMetric mm;
  mm.preset_ = Preset::FlatBaseline;
  mm.t_period_ = t_period;
  return mm;
}

ModelMetric ModelMetric::flat_torus_drawstring(
    std::shared_ptr<const DrawstringProfile> profile, double t_period) {
  if (!profile) throw std::invalid_argument("flat_torus_drawstring: no profile");
  if (profile->consts().n != 3)
    throw std::invalid_argument("flat_torus_drawstring: chart is 3-dimensional");
  if (profile->consts().r_I >= 1.0 / 100)
    throw std::invalid_argument("drawstring preset requires r_I < 1/100");
  ModelMetric mm;
  mm.preset_ = Preset::FlatTorusDrawstring;
  mm.profile_ = std::move(profile);
  mm.t_period_ = t_period;
  return mm;
}

ModelMetric ModelMetric::round_s3_baseline() {
  ModelMetric mm;
  mm.preset_ = Preset::RoundS3Baseline;
  mm.t_period_ = 6.283185307179586;
  return mm;
}

ModelMetric ModelMetric::round_s3_drawstring(
    std::shared_ptr<const DrawstringProfile> profile) {
  if (!profile) throw std::invalid_argument("round_s3_drawstring: no profile");
  if (profile->consts().n != 3)
    throw std::invalid_argument("round_s3_drawstring: chart is 3-dimensional");
  if (profile->consts().r_I >= 1.0 / 100)
    throw std::invalid_argument("drawstring preset requires r_I < 1/100");
  ModelMetric mm;
  mm.preset_ = Preset::RoundS3Drawstring;
  mm.profile_ = std::move(profile);
  mm.t_period_ = 6.283185307179586;
  return mm;
}

ModelMetric ModelMetric::af_cap(double mass) {
  if (!(mass > 0) || mass >= 0.25)
    throw std::invalid_argument("af_cap: need 0 < m < 1/4");
  ModelMetric mm;
  mm.preset_ = Preset::AFSchwarzschildCap;
  mm.mass_ = mass;
  return mm;
}

ModelMetric ModelMetric::conformal_inversion_sphere(double delta) {
  if (delta < 0)
    throw std::invalid_argument("conformal_inversion_sphere: delta >= 0");
  ModelMetric mm;
  mm.preset_ = Preset::ConformalInversionSphere;
  mm.delta_ = delta;
  return mm;
}

ModelMetric ModelMetric::prototype_warped(double c1, double c2) {
  if (!(c1 >= 0) || !(c2 >= 0))
    throw std::invalid_argument("prototype_warped: c1, c2 must be >= 0");
  ModelMetric mm;
  mm.preset_ = Preset::PrototypeWarped;
  mm.proto_c1_ = c1;
  mm.proto_c2_ = c2;
  return mm;
}

ModelMetric ModelMetric::baseline() const {
  switch (preset_) {
    case Preset::FlatTorusDrawstring: return flat_baseline(t_period_);
    case Preset::RoundS3Drawstring: return round_s3_baseline();
    default: return *this;
  }
}

double ModelMetric::r_max() const {
  switch (preset_) {
    case Preset::FlatBaseline:
    case Preset::FlatTorusDrawstring:
    case Preset::AFSchwarzschildCap:
      return std::numeric_limits<double>::infinity();
    case Preset::RoundS3Baseline:
    case Preset::RoundS3Drawstring:
      return 1.5707963267948966;  // pi/2: g_tt degenerates there
    case Preset::ConformalInversionSphere:
      return 3.141592653589793;
    case Preset::PrototypeWarped:
      // the closed form has a pole where log(1/r) = c1
      return std::exp(-proto_c1_) * 0.999;
  }
  return 0.0;
}

void ModelMetric::require_range(double r) const {
  if (!(r > 0.0)) bad_coord("r", r);
  if (!(r < r_max())) bad_coord("r", r);
}

double ModelMetric::u_at(double sigma, double r) const {
  if (!profile_) return 0.0;
  return profile_->u(sigma, r);
}

Mat3 ModelMetric::metric_at(const ChartPoint& p) const {
  const double r = p.x[0];
  require_range(r);
  Mat3 g;
  switch (preset_) {
    case Preset::FlatBaseline: {
      g(0, 0) = 1.0;
      g(1, 1) = r * r;
      g(2, 2) = 1.0;
      break;
    }
    case Preset::FlatTorusDrawstring: {
      const double pu = profile_->consts().p() * u_at(p.x[2], r);
      const double hh = profile_->h(r);
      const double uu = u_at(p.x[2], r);
      g(0, 0) = std::exp(-2.0 * pu);
      g(1, 1) = std::exp(-2.0 * pu) * hh * hh * r * r;
      g(2, 2) = std::exp(2.0 * uu);
      break;
    }
    case Preset::RoundS3Baseline: {
      const double sr = std::sin(r), cr = std::cos(r);
      g(0, 0) = 1.0;
      g(1, 1) = sr * sr;
      g(2, 2) = cr * cr;
      break;
    }
    case Preset::RoundS3Drawstring: {
      const double pu = profile_->consts().p() * u_at(p.x[2], r);
      const double uu = u_at(p.x[2], r);
      const double hh = profile_->h(r);
      const double sr = std::sin(r), cr = std::cos(r);
      g(0, 0) = std::exp(-2.0 * pu);
      g(1, 1) = std::exp(-2.0 * pu) * hh * hh * sr * sr;
      g(2, 2) = std::exp(2.0 * uu) * cr * cr;
      break;
    }
    case Preset::AFSchwarzschildCap: {
      const double sp = std::sin(p.x[1]);
      g(0, 0) = 1.0 / vm_eval(mass_, r, 0);
      g(1, 1) = r * r;
      g(2, 2) = r * r * sp * sp;
      break;
    }
    case Preset::ConformalInversionSphere: {
      const double q = std::sin(r) * std::sin(r) + delta_;
      const double phi = 0.5 * std::log((1.0 + delta_) / q) + 1.0;
      const double e2v = phi * phi;  // e^{2v} with v = log(phi)
      const double sr = std::sin(r);
      g(0, 0) = e2v * e2v;
      g(1, 1) = e2v * e2v * sr * sr;
      g(2, 2) = 1.0 / e2v;
      break;
    }
    case Preset::PrototypeWarped: {
      const double s = std::log(1.0 / r);
      const double f = r * (1.0 - proto_c1_ / s);
      const double e2u = std::pow(s, -2.0 * proto_c2_);  // u = -c2 log s
      g(0, 0) = 1.0 / e2u;
      g(1, 1) = f * f / e2u;
      g(2, 2) = e2u;
      break;
    }
  }
  return g;
}

double ModelMetric::volume_element(const ChartPoint& p) const {
  const Mat3 g = metric_at(p);
  return std::sqrt(g(0, 0) * g(1, 1) * g(2, 2));
}

double ModelMetric::baseline_scalar(double r) const {
  switch (preset_) {
    case Preset::FlatBaseline:
    case Preset::FlatTorusDrawstring:
      return 0.0;
    case Preset::RoundS3Baseline:
    case Preset::RoundS3Drawstring:
      return 6.0;
    case Preset::AFSchwarzschildCap: {
      const double e0 = af_eta().eval(r, 0);
      const double e1 = af_eta().eval(r, 1);
      return 2.0 * (6.0 * mass_ * e0 * r * r +
                    2.0 * mass_ * e1 * (r * r * r - 1.0)) / (r * r);
    }
    default:
      throw std::invalid_argument("baseline_scalar: unsupported preset");
  }
}

double ModelMetric::baseline_mean_curvature(double r) const {
  require_range(r);
  switch (preset_) {
    case Preset::FlatBaseline:
    case Preset::FlatTorusDrawstring:
      return 1.0 / r;
    case Preset::RoundS3Baseline:
    case Preset::RoundS3Drawstring:
      return std::cos(r) / std::sin(r) - std::tan(r);
    case Preset::AFSchwarzschildCap:
      return 2.0 * std::sqrt(vm_eval(mass_, r, 0)) / r;
    default:
      throw std::invalid_argument(
          "baseline_mean_curvature: unsupported preset");
  }
}

DiagWarpTerms ModelMetric::warp_terms(double r, double sigma) const {
  require_range(r);
  DiagWarpTerms t;
  switch (preset_) {
    case Preset::FlatBaseline: {
      t.w1 = 1.0 / r;
      break;
    }
    case Preset::RoundS3Baseline: {
      t.w1 = std::cos(r) / std::sin(r);
      t.w2 = -std::tan(r);
      t.kbase = -3.0;
      break;
    }
    case Preset::FlatTorusDrawstring:
    case Preset::RoundS3Drawstring: {
      if (!profile_->v0().is_constant())
        throw std::invalid_argument(
            "warp_terms: drawstring closed form needs constant v0");
      const double pfac = profile_->consts().p();
      const double v0 = profile_->v0()(sigma);
      const double up = v0 * profile_->w_r(r);
      const double hh = profile_->h(r);
      const double h1 = profile_->h_r(r);
      const double h2 = profile_->h_rr(r);
      t.a1 = -pfac * up;
      t.beta = -pfac * up + h1 / hh;
      t.gamma = up;
      // (1-p) u'' vanishes for p = 1 (3-dimensional models)
      t.beta1_plus_gamma1 = (h2 * hh - h1 * h1) / (hh * hh);
      if (preset_ == Preset::FlatTorusDrawstring) {
        t.w1 = 1.0 / r;
      } else {
        t.w1 = std::cos(r) / std::sin(r);
        t.w2 = -std::tan(r);
        t.kbase = -3.0;
      }
      const double uu = v0 * profile_->w(r);
      t.e2a = std::exp(-2.0 * pfac * uu);
      break;
    }
    case Preset::PrototypeWarped: {
      const double s = std::log(1.0 / r);
      // u = -c2 log s: u' = c2/(r s), u'' = c2 (1/s^2 - 1/s)/r^2
      const double up = proto_c2_ / (r * s);
      // log f = log r + log m, m = 1 - c1/s: m' = -c1/(r s^2)
      const double m = 1.0 - proto_c1_ / s;
      const double mp = -proto_c1_ / (r * s * s);
      const double mpp =
          proto_c1_ * (1.0 / (s * s) - 2.0 / (s * s * s)) / (r * r);
      t.a1 = -up;
      t.beta = -up + mp / m;
      t.gamma = up;
      t.beta1_plus_gamma1 = (mpp * m - mp * mp) / (m * m);  // u'' cancels
      t.w1 = 1.0 / r;
      t.e2a = std::pow(s, 2.0 * proto_c2_);  // g_rr = e^{-2u} = s^{2 c2}
      break;
    }
    case Preset::ConformalInversionSphere: {
      const double sr = std::sin(r), cr = std::cos(r);
      const double q = sr * sr + delta_;
      const double qp = 2.0 * sr * cr;            // sin(2r)
      const double qpp = 2.0 * (cr * cr - sr * sr);
      const double phi = 0.5 * std::log((1.0 + delta_) / q) + 1.0;
      const double phip = -qp / (2.0 * q);
      const double phipp = -(qpp * q - qp * qp) / (2.0 * q * q);
      const double v1 = phip / phi;
      const double v2 = (phipp * phi - phip * phip) / (phi * phi);
      // a = 2v, b = 2v + log sin r, c = -v
      t.a1 = 2.0 * v1;
      t.beta = 2.0 * v1;
      t.gamma = -v1;
      t.beta1_plus_gamma1 = v2;  // 2v'' - v''
      t.w1 = cr / sr;
      t.kbase = -1.0;
      t.e2a = std::pow(phi, 4.0);
      break;
    }
    case Preset::AFSchwarzschildCap:
      throw std::invalid_argument(
          "warp_terms: AF slices are round spheres; use the closed-form "
          "identity in curvature.cpp");
  }
  return t;
}

}  // namespace drawstring

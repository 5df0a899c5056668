#pragma once

#include <array>
#include <memory>
#include <string>

#include "drawstring/profile.hpp"

namespace drawstring {

// Chart coordinates. Tube charts use (r, theta, t) with theta, t periodic;
// the asymptotically flat chart uses (r, polar, azimuth).
struct ChartPoint {
  std::array<double, 3> x{0.0, 0.0, 0.0};
  double r() const { return x[0]; }
};

struct Mat3 {
  std::array<std::array<double, 3>, 3> m{};
  double& operator()(int i, int j) { return m[i][j]; }
  double operator()(int i, int j) const { return m[i][j]; }
};

enum class Preset {
  FlatBaseline,
  FlatTorusDrawstring,
  RoundS3Baseline,
  RoundS3Drawstring,
  AFSchwarzschildCap,
  ConformalInversionSphere,
  PrototypeWarped,
};

std::string preset_name(Preset p);
Preset preset_from_name(const std::string& name);

// Diagonal warped data g = e^{2a} dr^2 + e^{2b} dtheta^2 + e^{2c} dt^2 with
// b = beta_part + log(base_b), c = gamma_part + log(base_c). kbase carries
// the base contribution (log base_b)'' + w1^2 + (log base_c)'' + w2^2 + w1 w2
// in cancellation-free closed form, so baselines reproduce their scalar
// curvature exactly.
struct DiagWarpTerms {
  double a1 = 0.0;      // (1/2 log A)'
  double beta = 0.0;    // beta_part'
  double gamma = 0.0;   // gamma_part'
  double beta1_plus_gamma1 = 0.0;  // beta_part'' + gamma_part''
  double w1 = 0.0;      // (log base_b)'
  double w2 = 0.0;      // (log base_c)'
  double kbase = 0.0;
  double e2a = 1.0;     // e^{2a}
};

// Chart-based model metrics. All presets are diagonal in their charts.
class ModelMetric {
 public:
  static ModelMetric flat_baseline(double t_period = 6.283185307179586);
  static ModelMetric flat_torus_drawstring(
      std::shared_ptr<const DrawstringProfile> profile,
      double t_period = 6.283185307179586);
  static ModelMetric round_s3_baseline();
  static ModelMetric round_s3_drawstring(
      std::shared_ptr<const DrawstringProfile> profile);
  static ModelMetric af_cap(double mass);
  static ModelMetric conformal_inversion_sphere(double delta);
  static ModelMetric prototype_warped(double c1, double c2);

  Preset preset() const { return preset_; }
  const std::shared_ptr<const DrawstringProfile>& profile() const {
    return profile_;
  }
  double mass() const { return mass_; }
  double delta() const { return delta_; }
  double t_period() const { return t_period_; }
  double proto_c1() const { return proto_c1_; }
  double proto_c2() const { return proto_c2_; }

  bool is_drawstring() const {
    return preset_ == Preset::FlatTorusDrawstring ||
           preset_ == Preset::RoundS3Drawstring;
  }
  // matching undeformed model (for drawstring presets)
  ModelMetric baseline() const;

  // coefficient matrix at a chart point; throws std::domain_error outside
  // the chart's valid range.
  Mat3 metric_at(const ChartPoint& p) const;
  double volume_element(const ChartPoint& p) const;

  // largest radius the chart is valid for (exclusive)
  double r_max() const;

  // u(x) = v0(t) w(r) for drawstring presets, 0 otherwise
  double u_at(double sigma, double r) const;

  // baseline scalar curvature at r (flat 0, round 6, AF closed form, ...)
  double baseline_scalar(double r) const;
  // baseline outward mean curvature of the r-tube
  double baseline_mean_curvature(double r) const;

  // closed-form warped pieces at (r, sigma); requires a diagonal r-only
  // preset (drawstring presets need constant v0). AF is excluded (its
  // slices are round spheres; see curvature.cpp).
  DiagWarpTerms warp_terms(double r, double sigma = 0.0) const;

 private:
  ModelMetric() = default;
  void require_range(double r) const;

  Preset preset_ = Preset::FlatBaseline;
  std::shared_ptr<const DrawstringProfile> profile_;
  double mass_ = 0.0;
  double delta_ = 0.0;
  double t_period_ = 6.283185307179586;
  double proto_c1_ = 0.0, proto_c2_ = 0.0;
};

// V_m(r) = 1 - eta(r) 2m r^2 - (1 - eta(r)) 2m/r and its first derivative.
double vm_eval(double m, double r, int order);

// Constants shipped with the presets. The flat torus has integrable flat
// horizontal distribution, so the frame-bracket error constants vanish
// identically. The round-sphere values are conservative O(1) envelopes from
// |sec| = 1 (tube second fundamental form bounded by 2/r with cot r - tan r
// principal curvatures, frame brackets bounded by the curvature scale).
GeometryConstants flat_torus_constants(double t_period = 6.283185307179586);
GeometryConstants round_s3_constants();

}  // namespace drawstring

#pragma once

#include <memory>
#include <string>
#include <vector>

#include "drawstring/cutoffs.hpp"
#include "drawstring/tiny_radius.hpp"

namespace drawstring {

// Constants of the ambient model entering the parameter selection. C1..C5
// are the error-term constants of the scalar curvature estimate; presets
// ship conservative values (see models.hpp) and callers may override.
struct GeometryConstants {
  int n = 3;
  double C1 = 0.0, C2 = 0.0, C3 = 0.0, C4 = 0.0, C5 = 0.0;
  double R0 = 0.0;         // sup |R_g| near the submanifold
  double r_I = 1.0 / 128;  // tube radius
  double r0 = 1.0 / 128;   // radius where the curvature estimate holds
  double sigma_area = 6.283185307179586476925286766559;

  int p() const { return n - 2; }
  double alpha_n() const { return 0.5 * (n - 1) * (n - 2); }
  void validate() const;
};

// Conformal boundary data v0 <= 0 on the submanifold, represented by samples
// over one period of the Sigma parameter plus C^2-norm summaries. The
// artifact never differentiates v0 numerically.
struct BoundaryFunction {
  std::vector<double> samples;  // uniform over [0, period)
  double period = 6.283185307179586476925286766559;
  double sup_abs = 0.0;
  double c2_norm_sq = 0.0;

  static BoundaryFunction constant(double v);
  static BoundaryFunction sampled(std::vector<double> values, double period,
                                  double c2_norm_sq);

  bool is_constant() const { return samples.size() == 1; }
  double operator()(double sigma) const;  // periodic linear interpolation
  double inf() const;                     // most negative sample
  void validate() const;
};

struct ConditionViolation {
  std::string check;
  double r = 0.0;
  double sigma = 0.0;
  double margin = 0.0;  // negative = amount by which the inequality fails
};

struct ConditionReport {
  long n_points = 0;
  std::vector<ConditionViolation> violations;
  bool passed() const { return violations.empty(); }
};

// Radial profile of the deformation: psi, h = 1 - c1*eta(r/r1)*psi(r), the
// normalized w with w(0) = 1, and u = v0 * w. The inner radius r2 produced
// by the lemma-certified selection lies far below the double range (its
// loglog(1/r2) is of order 1/c2), so it is carried as a TinyRadius and the
// integrals for psi, w, I are evaluated through an exact three-piece
// decomposition whose middle piece is a loglog difference.
class DrawstringProfile {
 public:
  // Lemma-certified construction: select r1, then (c1, c2, r2).
  static DrawstringProfile build(const GeometryConstants& consts,
                                 const BoundaryFunction& v0, double eps);

  // Hand-built construction with explicit radii. c2 <= 0 means "solve
  // c2 from the normalization I(r2) = 1". Requires r2 <= r1/64.
  static DrawstringProfile with_params(
      const GeometryConstants& consts, const BoundaryFunction& v0, double eps,
      double r1, double c1, TinyRadius r2, double c2 = -1.0,
      CutoffSmoothness smoothness = CutoffSmoothness::C2PiecewiseQuadratic);

  // Desk-scale preset: r1 given, r2 = r1/256, c1 = min(r1, 1/100)/2, c2
  // solved from I(r2) = 1. Deformation visible at double precision.
  static DrawstringProfile desk(
      const GeometryConstants& consts, const BoundaryFunction& v0, double eps,
      double r1,
      CutoffSmoothness smoothness = CutoffSmoothness::C2PiecewiseQuadratic);

  // Trivial profile: c1 = 0, v0 = 0 (undeformed metric).
  static DrawstringProfile trivial(const GeometryConstants& consts);

  // --- parameter selection (exposed for direct testing) ---
  static double select_r1(const GeometryConstants& consts,
                          const BoundaryFunction& v0, double eps);
  struct Params {
    double c1, c2;
    TinyRadius r2;
  };
  static Params select_params(const GeometryConstants& consts,
                              const BoundaryFunction& v0, double eps,
                              double r1);

  // --- radial functions ---
  double psi(double r) const;
  double psi_p(double r) const;
  double psi_pp(double r) const;
  double h(double r) const;
  double h_r(double r) const;
  double h_rr(double r) const;
  double w(double r) const;
  double w_r(double r) const;
  double u(double sigma, double r) const { return v0_(sigma) * w(r); }

  enum class Which { H, W };
  double profile_eval(Which which, double r, int order) const;
  double u_eval(double sigma, double r) const { return u(sigma, r); }

  // Normalization integral I(r2) as evaluated by the production pieces.
  double normalization() const { return i_total_; }

  ConditionReport check_condition(long n_grid = 10001,
                                  int n_sigma = 8) const;

  // --- accessors ---
  const GeometryConstants& consts() const { return consts_; }
  const BoundaryFunction& v0() const { return v0_; }
  double eps() const { return eps_; }
  double r1() const { return r1_; }
  double c1() const { return c1_; }
  double c2() const { return c2_; }
  const TinyRadius& r2() const { return r2_; }
  double C6() const;

  // canonical cutoff breakpoints of the deformed metric, clipped to
  // representable values: {r2/2, r2, 2r2, 4r2, r1/8, r1/4, r1/2, r1}
  std::vector<double> breakpoints() const;

  std::string to_json() const;
  static DrawstringProfile from_json(const std::string& text);

 private:
  DrawstringProfile(
      const GeometryConstants& consts, const BoundaryFunction& v0, double eps,
      double r1, double c1, TinyRadius r2, double c2,
      CutoffSmoothness smoothness = CutoffSmoothness::C2PiecewiseQuadratic);

  double lam4() const;              // loglog(1/(4 r2))
  double zeta_over_r2(double r, int order) const;
  double zeta_over_4r2(double r) const;

  GeometryConstants consts_;
  BoundaryFunction v0_;
  double eps_;
  double r1_, c1_, c2_;
  TinyRadius r2_;
  CutoffFn zeta_, eta_;

  // cached pieces of the integral decomposition
  double jeta_full_ = 0.0;   // eta transition piece over [r1/8, r1/4]
  double tzeta_full_ = 0.0;  // zeta transition piece over [2r2, 4r2]
  double mid_full_ = 0.0;    // loglog(1/(4r2)) - loglog(8/r1)
  double i_total_ = 0.0;     // c2 * (tzeta + mid + jeta)
  double psi_head_ = 0.0;    // psi(r2) when r2 is representable
  double inv_log_r2_ = 0.0;  // 1/log(1/r2), 0 when r2 underflows
};

}  // namespace drawstring

#pragma once

#include <map>
#include <string>
#include <vector>

#include "drawstring/curvature.hpp"
#include "drawstring/models.hpp"

namespace drawstring {

struct GridSpec {
  long n_points = 10000;
  double r_min_factor = 1e-9;  // grid spans [r_min_factor * r_top, r_top]
};

struct PointMargin {
  double r = 0.0;
  double sigma = 0.0;
  double margin = 0.0;
};

struct VerificationReport {
  std::string check_id;
  std::string grid_spec;
  long n_points = 0;
  double worst_margin = 0.0;  // min over grid of LHS - RHS
  std::vector<PointMargin> violations;
  bool passed = false;
  std::map<std::string, double> params;

  // optional per-point table for CSV dumps
  std::vector<std::string> table_header;
  std::vector<std::vector<double>> table_rows;

  std::string to_json() const;
  void write_json(const std::string& path) const;
  void write_csv(const std::string& path) const;
};

// Theorem conclusions, one report per check. Grids are logarithmic in r with
// the profile's cutoff breakpoints (+- 1e-6 relative offsets) always
// included.

// (III) R_{g'} >= R_g - eps on (0, r_I]; also reports the strict margin
// R_{g'} >= R_g on (0, r1/4].
VerificationReport verify_scal_bound(const ModelMetric& model, double eps,
                                     const GridSpec& grid = {});

// (IV) radial distance: int_0^{r1} e^{-p u_min} dr <= 3 r1, with
// u_min(r) = (inf v0) w(r); also the intermediate bound
// int_0^{r1} log(1/r)^{r1} dr <= 2 r1 + r1^2.
VerificationReport verify_distance(const DrawstringProfile& profile);

// (VI) tube volume <= 12 pi Area(Sigma) r1^2.
VerificationReport verify_volume(const ModelMetric& model);

// (V) H' >= 1/(4 r log(1/r)) on (0, r1].
VerificationReport verify_mean_convexity(const ModelMetric& model,
                                         const GridSpec& grid = {});

// (VII) 1 - r1 <= h <= 1 and -sup|v0| <= u <= 0.
VerificationReport verify_h_u_range(const ModelMetric& model,
                                    const GridSpec& grid = {});

// 2-form eigenvalue and scalar bounds of the round-sphere instability family:
// min{e^{-2u} h, 1, h} >= 1 - 1/(100 i) and min R >= 6 - 1/i.
VerificationReport verify_llarull(const std::vector<int>& levels);

// AF example: closed-form identity vs fd oracle, nonnegativity, tube mean
// curvature positivity.
VerificationReport verify_af(double mass);

// The full Theorem 2.4 suite for a drawstring preset.
std::vector<VerificationReport> run_theorem_suite(const ModelMetric& model,
                                                  double eps,
                                                  const GridSpec& grid = {});

}  // namespace drawstring

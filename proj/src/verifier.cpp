#include "drawstring/verifier.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "drawstring/io.hpp"
#include "drawstring/quadrature.hpp"
#include "json.hpp"

namespace drawstring {

namespace {

// logarithmic grid on [r_top * factor, r_top] descending, with the profile
// breakpoints (+- small offsets) merged in
std::vector<double> log_grid(double r_top, long n, double factor,
                             const std::vector<double>& bps = {}) {
  std::vector<double> g;
  g.reserve(n + 3 * bps.size());
  for (long k = 0; k < n; ++k) {
    const double t = n == 1 ? 0.0 : static_cast<double>(k) / (n - 1);
    g.push_back(r_top * std::pow(factor, t));
  }
  for (double b : bps)
    for (double f : {1.0 - 1e-6, 1.0, 1.0 + 1e-6}) {
      const double r = b * f;
      if (r > r_top * factor && r <= r_top) g.push_back(r);
    }
  std::sort(g.begin(), g.end());
  g.erase(std::unique(g.begin(), g.end()), g.end());
  return g;
}

void finish(VerificationReport* rep, double tol) {
  rep->passed = rep->violations.empty() && rep->worst_margin >= -tol;
}

}  // namespace

std::string VerificationReport::to_json() const {
  nlohmann::json j;
  j["check_id"] = check_id;
  j["grid_spec"] = grid_spec;
  j["n_points"] = n_points;
  j["worst_margin"] = worst_margin;
  j["passed"] = passed;
  j["params"] = params;
  nlohmann::json v = nlohmann::json::array();
  for (const auto& x : violations)
    v.push_back({{"r", x.r}, {"sigma", x.sigma}, {"margin", x.margin}});
  j["violations"] = v;
  return j.dump(2);
}

void VerificationReport::write_json(const std::string& path) const {
  write_text_file(path, to_json() + "\n");
}

void VerificationReport::write_csv(const std::string& path) const {
  CsvWriter csv(path, table_header);
  for (const auto& row : table_rows) csv.row(row);
}

VerificationReport verify_scal_bound(const ModelMetric& model, double eps,
                                     const GridSpec& grid) {
  if (!model.is_drawstring())
    throw std::invalid_argument("verify_scal_bound: drawstring preset needed");
  const auto& prof = *model.profile();
  VerificationReport rep;
  rep.check_id = "thm2.4-III-scal-bound";
  rep.params = {{"eps", eps}, {"r1", prof.r1()}};
  rep.grid_spec = "log grid on (0, r_I], breakpoints included";
  rep.table_header = {"r", "R_deformed", "R_base", "margin"};

  const double r_top = prof.consts().r_I;
  const auto rs =
      log_grid(r_top, grid.n_points, grid.r_min_factor, prof.breakpoints());
  double worst = std::numeric_limits<double>::infinity();
  double worst_inner = std::numeric_limits<double>::infinity();
  for (double r : rs) {
    ChartPoint x{{r, 1.0, 0.0}};
    const double Rd = warped_scalar(model, x);
    const double Rb = model.baseline_scalar(r);
    const double tol = 1e-9 * (1.0 + std::fabs(Rb));
    const double margin = Rd - (Rb - eps);
    worst = std::min(worst, margin);
    if (margin < -tol)
      rep.violations.push_back({r, 0.0, margin});
    if (r <= prof.r1() / 4.0) worst_inner = std::min(worst_inner, Rd - Rb);
    rep.table_rows.push_back({r, Rd, Rb, margin});
  }
  rep.n_points = static_cast<long>(rs.size());
  rep.worst_margin = worst;
  rep.params["worst_inner_margin"] = worst_inner;
  finish(&rep, 1e-9 * (1.0 + 6.0));
  // strict inner bound R_{g'} >= R_g on (0, r1/4]
  if (worst_inner < -1e-9) rep.passed = false;
  return rep;
}

VerificationReport verify_distance(const DrawstringProfile& profile) {
  VerificationReport rep;
  rep.check_id = "thm2.4-IV-distance";
  const double r1 = profile.r1();
  const double p = profile.consts().p();
  const double vmin = profile.v0().inf();  // most negative value
  // radial length int_0^{r1} e^{-p u_min} dr in the substitution
  // r = e^{-l}: int_{s1}^{inf} e^{p |vmin| w(e^{-l})} e^{-l} dl; the tail
  // beyond l = 700 is below double resolution.
  const double s1 = std::log(1.0 / r1);
  const auto f = [&](double l) {
    const double r = std::exp(-l);
    return std::exp(-p * vmin * profile.w(r)) * r;
  };
  const double radial = adaptive_simpson(f, s1, 700.0, 1e-14);
  // intermediate bound: int_0^{r1} log(1/r)^{r1} dr <= 2 r1 + r1^2
  const auto fb = [&](double l) { return std::pow(l, r1) * std::exp(-l); };
  const double inter = adaptive_simpson(fb, s1, 700.0, 1e-14);

  rep.params = {{"radial_integral", radial},
                {"bound", 3.0 * r1},
                {"intermediate_integral", inter},
                {"intermediate_bound", 2.0 * r1 + r1 * r1}};
  rep.n_points = 2;
  rep.worst_margin = std::min(3.0 * r1 - radial, 2.0 * r1 + r1 * r1 - inter);
  if (3.0 * r1 - radial < 0)
    rep.violations.push_back({r1, 0.0, 3.0 * r1 - radial});
  if (2.0 * r1 + r1 * r1 - inter < 0)
    rep.violations.push_back({r1, 0.0, 2.0 * r1 + r1 * r1 - inter});
  finish(&rep, 1e-12 * r1);
  return rep;
}

VerificationReport verify_volume(const ModelMetric& model) {
  if (!model.is_drawstring())
    throw std::invalid_argument("verify_volume: drawstring preset needed");
  const auto& prof = *model.profile();
  VerificationReport rep;
  rep.check_id = "thm2.4-VI-volume";
  const double r1 = prof.r1();
  const double p = prof.consts().p();
  const double area = prof.consts().sigma_area;
  const bool flat = model.preset() == Preset::FlatTorusDrawstring;
  const double two_pi = 6.283185307179586476925286766559;
  const double t_len = flat ? model.t_period() : two_pi;

  // V = int e^{-p u} h dV_g with dV_g = base_area(r) dr dtheta dt; the
  // t-integral averages e^{-p v0(t) w} over the v0 samples.
  const int n_t = prof.v0().is_constant() ? 1 : 64;
  double vol = 0.0;
  for (int k = 0; k < n_t; ++k) {
    const double t = t_len * k / n_t;
    const double v0t = prof.v0()(t);
    const auto f = [&](double r) {
      if (r <= 0.0) return 0.0;
      const double base = flat ? r : std::sin(r) * std::cos(r);
      return std::exp(-p * v0t * prof.w(r)) * prof.h(r) * base;
    };
    const auto bps = prof.breakpoints();
    vol += adaptive_simpson_split(f, 0.0, r1, bps.begin(), bps.end(), 1e-14) *
           two_pi * (t_len / n_t);
  }
  const double bound = 12.0 * 3.14159265358979323846 * area * r1 * r1;
  rep.params = {{"volume", vol}, {"bound", bound}};
  rep.n_points = 1;
  rep.worst_margin = bound - vol;
  if (rep.worst_margin < 0) rep.violations.push_back({r1, 0.0, rep.worst_margin});
  finish(&rep, 1e-12 * bound);
  return rep;
}

VerificationReport verify_mean_convexity(const ModelMetric& model,
                                         const GridSpec& grid) {
  if (!model.profile())
    throw std::invalid_argument("verify_mean_convexity: profile needed");
  const auto& prof = *model.profile();
  VerificationReport rep;
  rep.check_id = "thm2.4-V-mean-convexity";
  rep.grid_spec = "log grid on (0, r1]";
  rep.table_header = {"r", "H_prime", "bound", "margin"};
  const double r1 = prof.r1();
  // e^{pu} is smallest at the most negative v0 sample
  double sig_min = 0.0;
  {
    const auto& s = prof.v0().samples;
    size_t idx = 0;
    for (size_t i = 1; i < s.size(); ++i)
      if (s[i] < s[idx]) idx = i;
    sig_min = prof.v0().period * idx / s.size();
  }
  const auto rs =
      log_grid(r1, grid.n_points, grid.r_min_factor, prof.breakpoints());
  double worst = std::numeric_limits<double>::infinity();
  for (double r : rs) {
    const double Hp = mean_curvature_prime(model, r, sig_min);
    const double bound = 1.0 / (4.0 * r * std::log(1.0 / r));
    const double margin = Hp - bound;
    worst = std::min(worst, margin);
    if (margin < -1e-9 * bound) rep.violations.push_back({r, sig_min, margin});
    rep.table_rows.push_back({r, Hp, bound, margin});
  }
  rep.n_points = static_cast<long>(rs.size());
  rep.worst_margin = worst;
  finish(&rep, 1e-9);
  return rep;
}

VerificationReport verify_h_u_range(const ModelMetric& model,
                                    const GridSpec& grid) {
  if (!model.profile())
    throw std::invalid_argument("verify_h_u_range: profile needed");
  const auto& prof = *model.profile();
  VerificationReport rep;
  rep.check_id = "thm2.4-VII-h-u-range";
  rep.grid_spec = "log grid on (0, r_I] plus r = 0";
  const double sup = prof.v0().sup_abs;
  auto rs = log_grid(prof.consts().r_I, grid.n_points, grid.r_min_factor,
                     prof.breakpoints());
  rs.push_back(0.0);
  double worst = std::numeric_limits<double>::infinity();
  for (double r : rs) {
    const double hh = prof.h(r);
    const double margins[4] = {hh - (1.0 - prof.r1()), 1.0 - hh, 0.0, 0.0};
    double m = std::min(margins[0], margins[1]);
    for (int k = 0; k < 8; ++k) {
      const double sig = prof.v0().period * k / 8;
      const double uu = prof.u(sig, r);
      m = std::min({m, -uu, uu + sup});
    }
    worst = std::min(worst, m);
    if (m < -1e-12) rep.violations.push_back({r, 0.0, m});
  }
  rep.n_points = static_cast<long>(rs.size());
  rep.worst_margin = worst;
  finish(&rep, 1e-12);
  return rep;
}

VerificationReport verify_llarull(const std::vector<int>& levels) {
  VerificationReport rep;
  rep.check_id = "llarull-2form-instability";
  rep.grid_spec = "log grid on (0, r_I], 2000 points per level";
  rep.table_header = {"i", "min_2form_eigenvalue", "eigen_bound", "min_R",
                      "scal_bound"};
  double worst = std::numeric_limits<double>::infinity();
  long n_total = 0;
  for (int i : levels) {
    if (i < 1) throw std::invalid_argument("verify_llarull: levels must be >= 1");
    const GeometryConstants consts = round_s3_constants();
    const auto prof = std::make_shared<DrawstringProfile>(
        DrawstringProfile::build(consts, BoundaryFunction::constant(-i),
                                 1.0 / (100.0 * i)));
    const ModelMetric model = ModelMetric::round_s3_drawstring(prof);
    const auto rs = log_grid(consts.r_I, 2000, 1e-9, prof->breakpoints());
    double min_eig = std::numeric_limits<double>::infinity();
    double min_R = std::numeric_limits<double>::infinity();
    for (double r : rs) {
      const double hh = prof->h(r);
      const double uu = prof->u(0.0, r);
      // 2-form eigenvalues relative to the round metric
      const double e1 = std::exp(-2.0 * uu) * hh;
      min_eig = std::min({min_eig, e1, 1.0, hh});
      ChartPoint x{{r, 1.0, 0.0}};
      min_R = std::min(min_R, warped_scalar(model, x));
    }
    n_total += static_cast<long>(rs.size());
    const double eig_bound = 1.0 - 1.0 / (100.0 * i);
    const double scal_bound = 6.0 - 1.0 / i;
    const double m = std::min(min_eig - eig_bound, min_R - scal_bound);
    worst = std::min(worst, m);
    if (m < -1e-9)
      rep.violations.push_back({static_cast<double>(i), 0.0, m});
    rep.table_rows.push_back(
        {static_cast<double>(i), min_eig, eig_bound, min_R, scal_bound});
  }
  rep.n_points = n_total;
  rep.worst_margin = worst;
  finish(&rep, 1e-9);
  return rep;
}

VerificationReport verify_af(double mass) {
  if (!(mass > 0) || mass >= 0.25)
    throw std::invalid_argument("verify_af: need 0 < m < 1/4");
  const ModelMetric model = ModelMetric::af_cap(mass);
  VerificationReport rep;
  rep.check_id = "af-scal-identity";
  rep.params = {{"m", mass}};
  rep.grid_spec =
      "400 points on [0.05, 3], cutoff breakpoints excluded at 4*step";
  rep.table_header = {"r", "R_closed", "R_fd", "rel_err"};
  const double bps[3] = {0.5, 0.75, 1.0};
  double worst = std::numeric_limits<double>::infinity();
  double min_R = std::numeric_limits<double>::infinity();
  long n = 0;
  for (int k = 0; k <= 400; ++k) {
    const double r = 0.05 + (3.0 - 0.05) * k / 400.0;
    const double step = fd_step(r);
    bool near_bp = false;
    for (double b : bps) near_bp = near_bp || std::fabs(r - b) < 4.0 * step;
    const double Rc = model.baseline_scalar(r);
    min_R = std::min(min_R, Rc);
    if (near_bp) continue;
    ChartPoint x{{r, 1.5707963267948966, 1.0}};
    const double Rf = fd_scalar_richardson(model, x, step);
    const double tol = std::max(1e-5, 1e-3 * std::max(std::fabs(Rc), std::fabs(Rf)));
    const double margin = tol - std::fabs(Rc - Rf);
    worst = std::min(worst, margin);
    if (margin < 0) rep.violations.push_back({r, 0.0, margin});
    rep.table_rows.push_back(
        {r, Rc, Rf, std::fabs(Rc - Rf) / std::max(1e-300, std::fabs(Rc))});
    ++n;
  }
  // nonnegativity of the closed form, and tube mean convexity 2 sqrt(V)/r > 0
  if (min_R < -1e-9) rep.violations.push_back({0.0, 0.0, min_R});
  double min_H = std::numeric_limits<double>::infinity();
  for (int k = 1; k <= 300; ++k) {
    const double r = 3.0 * k / 300.0;
    min_H = std::min(min_H, model.baseline_mean_curvature(r));
  }
  if (min_H <= 0) rep.violations.push_back({0.0, 0.0, min_H});
  rep.params["min_R"] = min_R;
  rep.params["min_H"] = min_H;
  rep.n_points = n;
  rep.worst_margin = worst;
  finish(&rep, 0.0);
  return rep;
}

std::vector<VerificationReport> run_theorem_suite(const ModelMetric& model,
                                                  double eps,
                                                  const GridSpec& grid) {
  std::vector<VerificationReport> out;
  out.push_back(verify_scal_bound(model, eps, grid));
  out.push_back(verify_distance(*model.profile()));
  out.push_back(verify_mean_convexity(model, grid));
  out.push_back(verify_volume(model));
  out.push_back(verify_h_u_range(model, grid));
  return out;
}

}  // namespace drawstring

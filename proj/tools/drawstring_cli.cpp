#include <cmath>
#include <filesystem>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "drawstring/conformal_inversion.hpp"
#include "drawstring/curvature.hpp"
#include "drawstring/io.hpp"
#include "drawstring/models.hpp"
#include "drawstring/profile.hpp"
#include "drawstring/pulled_metric.hpp"
#include "drawstring/run_config.hpp"
#include "drawstring/verifier.hpp"

namespace ds = drawstring;

namespace {

// exit codes: 0 pass, 1 failed checks, 2 usage, 3 parameter/domain error
constexpr int kExitChecksFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kExitParameter = 3;

std::string out_path(const ds::RunConfig& cfg, const std::string& name) {
  return (std::filesystem::path(cfg.output_dir) / name).string();
}

std::shared_ptr<const ds::DrawstringProfile> make_profile(
    const ds::RunConfig& cfg) {
  const bool flat = cfg.preset == "flat-torus" || cfg.preset == "flat-baseline";
  const ds::GeometryConstants consts =
      flat ? ds::flat_torus_constants() : ds::round_s3_constants();
  const ds::BoundaryFunction v0 = ds::BoundaryFunction::constant(cfg.v0_const);
  if (cfg.desk_r1 > 0.0)
    return std::make_shared<ds::DrawstringProfile>(
        ds::DrawstringProfile::desk(consts, v0, cfg.eps, cfg.desk_r1));
  return std::make_shared<ds::DrawstringProfile>(
      ds::DrawstringProfile::build(consts, v0, cfg.eps));
}

ds::ModelMetric make_model(const ds::RunConfig& cfg) {
  const ds::Preset p = ds::preset_from_name(cfg.preset);
  switch (p) {
    case ds::Preset::FlatBaseline: return ds::ModelMetric::flat_baseline();
    case ds::Preset::RoundS3Baseline: return ds::ModelMetric::round_s3_baseline();
    case ds::Preset::FlatTorusDrawstring:
      return ds::ModelMetric::flat_torus_drawstring(make_profile(cfg));
    case ds::Preset::RoundS3Drawstring:
      return ds::ModelMetric::round_s3_drawstring(make_profile(cfg));
    case ds::Preset::AFSchwarzschildCap:
      return ds::ModelMetric::af_cap(cfg.mass);
    case ds::Preset::ConformalInversionSphere:
      return ds::ModelMetric::conformal_inversion_sphere(cfg.delta);
    case ds::Preset::PrototypeWarped:
      return ds::ModelMetric::prototype_warped(0.01, 0.1);
  }
  throw std::invalid_argument("unknown preset");
}

int cmd_build_profile(const ds::RunConfig& cfg) {
  const auto prof = make_profile(cfg);
  ds::write_text_file(out_path(cfg, "profile.json"), prof->to_json() + "\n");
  std::cout << "wrote " << out_path(cfg, "profile.json") << "\n";
  return 0;
}

int cmd_verify(const ds::RunConfig& cfg) {
  const ds::ModelMetric model = make_model(cfg);
  if (!model.is_drawstring())
    throw std::invalid_argument("verify: drawstring preset required");
  auto reports = ds::run_theorem_suite(model, cfg.eps);
  const auto cond = model.profile()->check_condition();
  bool all = cond.passed();
  for (const auto& r : reports) {
    r.write_json(out_path(cfg, r.check_id + ".json"));
    if (!r.table_header.empty())
      r.write_csv(out_path(cfg, r.check_id + ".csv"));
    std::cout << (r.passed ? "PASS " : "FAIL ") << r.check_id
              << "  worst_margin=" << ds::fmt17(r.worst_margin) << "\n";
    all = all && r.passed;
  }
  nlohmann::json jc;
  jc["check_id"] = "condition-2.2-lemma-4.4";
  jc["n_points"] = cond.n_points;
  jc["passed"] = cond.passed();
  jc["n_violations"] = cond.violations.size();
  ds::write_text_file(out_path(cfg, "condition.json"), jc.dump(2) + "\n");
  std::cout << (cond.passed() ? "PASS " : "FAIL ") << "condition-2.2-lemma-4.4"
            << "  violations=" << cond.violations.size() << "\n";
  ds::write_text_file(out_path(cfg, "config.json"),
                      cfg.to_json().dump(2) + "\n");
  return all ? 0 : kExitChecksFailed;
}

int cmd_scan_curvature(const ds::RunConfig& cfg) {
  const ds::ModelMetric model = make_model(cfg);
  double lo, hi;
  switch (model.preset()) {
    case ds::Preset::FlatBaseline: lo = 0.1; hi = 2.0; break;
    case ds::Preset::RoundS3Baseline: lo = 0.1; hi = 1.4; break;
    case ds::Preset::AFSchwarzschildCap: lo = 0.05; hi = 3.0; break;
    case ds::Preset::PrototypeWarped: lo = 1e-4; hi = 1e-1; break;
    case ds::Preset::ConformalInversionSphere: lo = 0.05; hi = 3.0; break;
    default:
      lo = model.profile()->consts().r_I * 1e-4;
      hi = model.profile()->consts().r_I * 0.98;
  }
  std::vector<double> bps;
  if (model.profile()) bps = model.profile()->breakpoints();
  if (model.preset() == ds::Preset::AFSchwarzschildCap)
    bps = {0.5, 0.75, 1.0};
  ds::CsvWriter csv(out_path(cfg, "scan.csv"), {"r", "R", "R_oracle",
                                                "abs_diff"});
  double worst = 0.0;
  int n = 0;
  for (int k = 0; k < cfg.steps; ++k) {
    const double r = lo * std::pow(hi / lo, double(k) / (cfg.steps - 1));
    const double step = ds::fd_step(r);
    bool skip = false;
    for (double b : bps) skip = skip || std::fabs(r - b) < 4.0 * step;
    if (skip) continue;
    ds::ChartPoint x{{r, 1.0, 0.5}};
    if (model.preset() == ds::Preset::AFSchwarzschildCap)
      x.x[1] = 1.5707963267948966;
    const double rc = ds::warped_scalar(model, x);
    const double rf = ds::fd_scalar_richardson(model, x, step);
    csv.row({r, rc, rf, std::fabs(rc - rf)});
    worst = std::max(worst,
                     std::fabs(rc - rf) /
                         std::max(1e-5, std::max(std::fabs(rc), std::fabs(rf))));
    ++n;
  }
  std::cout << "scan points=" << n << " worst_rel=" << ds::fmt17(worst) << "\n";
  return worst <= 1e-3 ? 0 : kExitChecksFailed;
}

int cmd_pulled(const ds::RunConfig& cfg) {
  // convergence study on the flat-torus family with v0 = -c fixed
  const double c = cfg.c_pull;
  const double v0c = std::isinf(c) ? -6.0 : -c;
  const ds::GeometryConstants consts = ds::flat_torus_constants();
  std::vector<ds::ModelMetric> models;
  std::vector<double> eps_levels;
  for (int i : {1, 2, 4, 8}) {
    const double eps = 1.0 / i;
    eps_levels.push_back(eps);
    auto prof = std::make_shared<ds::DrawstringProfile>(
        ds::DrawstringProfile::desk(consts, ds::BoundaryFunction::constant(v0c),
                                    eps, eps * consts.r_I / 2.0));
    models.push_back(ds::ModelMetric::flat_torus_drawstring(prof));
  }
  const double rI = consts.r_I;
  const double pi = 3.14159265358979323846;
  std::vector<std::pair<std::array<double, 3>, std::array<double, 3>>> pairs;
  for (double t : {pi / 2, pi, 3 * pi / 2})
    pairs.push_back({{rI, 0.0, 0.0}, {rI, pi, t}});
  pairs.push_back({{rI, 0.0, 0.0}, {rI, pi, 0.0}});

  const auto rows = ds::convergence_study(models, c, pairs, cfg.resolution);
  ds::CsvWriter csv(out_path(cfg, "study.csv"), {"i", "eps", "sup_deviation"});
  bool monotone = true;
  const ds::PulledSpace base =
      ds::discretize(models.front().baseline(), cfg.resolution, rI);
  const double slack = 2.0 * base.mesh;
  for (size_t k = 0; k < rows.size(); ++k) {
    csv.row({double(k), rows[k].eps, rows[k].sup_deviation});
    if (k > 0 &&
        rows[k].sup_deviation > rows[k - 1].sup_deviation + slack)
      monotone = false;
  }
  // space export for the baseline lattice
  {
    ds::CsvWriter nodes(out_path(cfg, "nodes.csv"), {"id", "x0", "x1", "x2"});
    for (size_t i = 0; i < base.size(); ++i)
      nodes.row({double(i), base.coords[i][0], base.coords[i][1],
                 base.coords[i][2]});
    ds::CsvWriter edges(out_path(cfg, "edges.csv"), {"a", "b", "weight"});
    for (const auto& e : base.edges)
      edges.row({double(e.a), double(e.b), e.weight});
  }
  std::cout << (monotone ? "PASS" : "FAIL")
            << " pulled convergence trend (slack=2*mesh=" << ds::fmt17(slack)
            << ")\n";
  return monotone ? 0 : kExitChecksFailed;
}

int cmd_inversion(const ds::RunConfig& cfg) {
  const ds::InversionCurve curve =
      ds::build_inversion_curve(cfg.delta, cfg.delta == 0.0 ? 1e-70 : 1e-8,
                                std::max(cfg.steps, 2048));
  ds::CsvWriter csv(out_path(cfg, "inversion.csv"),
                    {"r", "r_tilde", "f", "u", "A", "B"});
  for (size_t k = 0; k < curve.r.size(); ++k) {
    const double rt = curve.r_tilde[k];
    const double st = std::log(1.0 / rt);
    const double A = rt < 1.0 ? curve.u[k] + std::log(st) : 0.0;
    const double B = rt < 1.0 ? (curve.f[k] / rt - 1.0) * st : 0.0;
    csv.row({curve.r[k], rt, curve.f[k], curve.u[k], A, B});
  }
  if (cfg.delta == 0.0) {
    const auto rep = ds::asymptotics_check(curve);
    nlohmann::json j;
    j["final_A"] = rep.final_A;
    j["final_B"] = rep.final_B;
    j["decreasing_tail"] = rep.decreasing_tail;
    j["passed"] = rep.passed;
    ds::write_text_file(out_path(cfg, "asymptotics.json"), j.dump(2) + "\n");
    std::cout << (rep.passed ? "PASS" : "FAIL") << " asymptotics: A="
              << ds::fmt17(rep.final_A) << " B=" << ds::fmt17(rep.final_B)
              << "\n";
    return rep.passed ? 0 : kExitChecksFailed;
  }
  const auto sup = ds::supersolution_check(cfg.delta, 1000);
  std::cout << (sup.passed ? "PASS" : "FAIL") << " supersolution residuals\n";
  return sup.passed ? 0 : kExitChecksFailed;
}

int cmd_jacobi(const ds::RunConfig& cfg) {
  const double K = cfg.k_const;
  const auto sol =
      ds::jacobi_solve([K](double) { return K; }, 1.0, std::max(cfg.steps, 16));
  ds::CsvWriter csv(out_path(cfg, "jacobi.csv"), {"r", "h", "h_r"});
  for (size_t k = 0; k < sol.grid.size(); ++k)
    csv.row({sol.grid[k], sol.h_values[k], sol.hr_values[k]});
  std::cout << "wrote " << out_path(cfg, "jacobi.csv") << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"drawstring metric constructions and numerical verification"};
  app.require_subcommand(1);

  ds::RunConfig cfg;
  std::string config_file;
  app.add_option("--config", config_file, "JSON config file (flags override)");

  const auto add_common = [&](CLI::App* sub) {
    sub->add_option("--preset", cfg.preset);
    sub->add_option("--eps", cfg.eps);
    sub->add_option("--v0", cfg.v0_const);
    sub->add_option("--c", [&cfg](const std::vector<std::string>& v) {
      if (v.empty()) return false;
      cfg.c_pull = (v[0] == "inf") ? std::numeric_limits<double>::infinity()
                                   : std::stod(v[0]);
      return true;
    }, "pull exponent (number or 'inf')");
    sub->add_option("--resolution", cfg.resolution);
    sub->add_option("--out", cfg.output_dir);
    sub->add_option("--seed", cfg.seed);
    sub->add_option("--steps", cfg.steps);
    sub->add_option("--mass", cfg.mass);
    sub->add_option("--delta", cfg.delta);
    sub->add_option("--desk-r1", cfg.desk_r1);
    sub->add_option("--k-const", cfg.k_const);
  };

  CLI::App* sub_bp = app.add_subcommand("build-profile", "write profile JSON");
  CLI::App* sub_vf = app.add_subcommand("verify", "run the verifier suite");
  CLI::App* sub_sc = app.add_subcommand("scan-curvature",
                                        "closed form vs oracle CSV");
  CLI::App* sub_pl = app.add_subcommand("pulled", "discretized d_c study");
  CLI::App* sub_iv = app.add_subcommand("inversion", "conformal inversion CSV");
  CLI::App* sub_jc = app.add_subcommand("jacobi", "Jacobi IVP table");
  for (CLI::App* s : {sub_bp, sub_vf, sub_sc, sub_pl, sub_iv, sub_jc})
    add_common(s);

  // config file first, then reparse so flags win
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }
  if (!config_file.empty()) {
    cfg = ds::RunConfig::from_json(
        nlohmann::json::parse(ds::read_text_file(config_file)));
    try {
      app.clear();
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e);
      return code == 0 ? 0 : kExitUsage;
    }
  }

  try {
    if (sub_bp->parsed()) { cfg.command = "build-profile"; return cmd_build_profile(cfg); }
    if (sub_vf->parsed()) { cfg.command = "verify"; return cmd_verify(cfg); }
    if (sub_sc->parsed()) { cfg.command = "scan-curvature"; return cmd_scan_curvature(cfg); }
    if (sub_pl->parsed()) { cfg.command = "pulled"; return cmd_pulled(cfg); }
    if (sub_iv->parsed()) { cfg.command = "inversion"; return cmd_inversion(cfg); }
    if (sub_jc->parsed()) { cfg.command = "jacobi"; return cmd_jacobi(cfg); }
  } catch (const std::invalid_argument& e) {
    std::cerr << "parameter error: " << e.what() << "\n";
    return kExitParameter;
  } catch (const std::domain_error& e) {
    std::cerr << "domain error: " << e.what() << "\n";
    return kExitParameter;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitParameter;
  }
  return kExitUsage;
}

#include "drawstring/verifier.hpp"

#include <cmath>
#include <filesystem>
#include <map>
#include <memory>

#include "doctest.h"
#include "drawstring/io.hpp"
#include "json.hpp"
#include "oracles.hpp"

using namespace drawstring;

namespace {

std::shared_ptr<const DrawstringProfile> certified_flat(double v0 = -1.0,
                                                        double eps = 0.01) {
  static std::map<std::pair<double, double>,
                  std::shared_ptr<const DrawstringProfile>>
      cache;
  auto& slot = cache[{v0, eps}];
  if (!slot)
    slot = std::make_shared<DrawstringProfile>(DrawstringProfile::build(
        flat_torus_constants(), BoundaryFunction::constant(v0), eps));
  return slot;
}

std::shared_ptr<const DrawstringProfile> desk_flat() {
  const auto consts = flat_torus_constants();
  static const auto p = std::make_shared<DrawstringProfile>(
      DrawstringProfile::desk(consts, BoundaryFunction::constant(-1.0), 0.5,
                              consts.r_I / 2.0));
  return p;
}

}  // namespace

TEST_CASE("scalar bound report on the certified flat-torus drawstring") {
  const ModelMetric m = ModelMetric::flat_torus_drawstring(certified_flat());
  const auto rep = verify_scal_bound(m, 0.01, {2000, 1e-9});
  CHECK(rep.passed);
  CHECK(rep.worst_margin >= -0.01);
  // strict inner positivity R_{g'} >= R_g on (0, r1/4]
  CHECK(rep.params.at("worst_inner_margin") >= -1e-12);
}

TEST_CASE("scalar bound: desk profile also passes (visible deformation)") {
  const ModelMetric m = ModelMetric::flat_torus_drawstring(desk_flat());
  const auto rep = verify_scal_bound(m, 0.5, {2000, 1e-9});
  CHECK(rep.passed);
}

TEST_CASE("scalar bound: trivial profile has margin exactly eps") {
  const auto consts = flat_torus_constants();
  const auto triv =
      std::make_shared<DrawstringProfile>(DrawstringProfile::trivial(consts));
  const ModelMetric m = ModelMetric::flat_torus_drawstring(triv);
  const auto rep = verify_scal_bound(m, 0.25, {500, 1e-9});
  CHECK(rep.passed);
  CHECK(rep.worst_margin == doctest::Approx(0.25).epsilon(1e-14));
  // R_{g'} - R_g = 0 exactly on the untouched region
  CHECK(rep.params.at("worst_inner_margin") == 0.0);
}

TEST_CASE("distance report") {
  const auto prof = certified_flat();
  const auto rep = verify_distance(*prof);
  CHECK(rep.passed);
  // independent check of the radial integral by Gauss-Kronrod in l-space
  const double r1 = prof->r1();
  const double want = oracles::integrate_gk(
      [&](double l) {
        return std::exp(prof->w(std::exp(-l))) * std::exp(-l);
      },
      std::log(1.0 / r1), 700.0, 1e-13);
  CHECK(rep.params.at("radial_integral") ==
        doctest::Approx(want).epsilon(1e-9));
  CHECK(rep.params.at("radial_integral") <= 3.0 * r1);
  // trivial profile: integral = r1 exactly
  const auto triv = DrawstringProfile::trivial(flat_torus_constants());
  const auto rep2 = verify_distance(triv);
  CHECK(rep2.params.at("radial_integral") ==
        doctest::Approx(triv.r1()).epsilon(1e-12));

  // desk profile: deformation visible, bound still holds
  const auto rep3 = verify_distance(*desk_flat());
  CHECK(rep3.passed);
  CHECK(rep3.params.at("radial_integral") > desk_flat()->r1());
}

TEST_CASE("volume report") {
  // trivial profile, flat base: exact Euclidean tube volume pi r1^2 L
  const auto consts = flat_torus_constants();
  const auto triv =
      std::make_shared<DrawstringProfile>(DrawstringProfile::trivial(consts));
  const ModelMetric m = ModelMetric::flat_torus_drawstring(triv);
  const auto rep = verify_volume(m);
  const double pi = 3.14159265358979323846;
  CHECK(rep.passed);
  CHECK(rep.params.at("volume") ==
        doctest::Approx(pi * triv->r1() * triv->r1() * m.t_period())
            .epsilon(1e-10));
  // certified profile with v0 = -5: e^{-pu} growth capped by lemma 4.4(iii)
  const auto deep = certified_flat(-5.0, 0.01);
  const auto rep2 =
      verify_volume(ModelMetric::flat_torus_drawstring(deep));
  CHECK(rep2.passed);
  // desk round-sphere drawstring
  const auto dround = std::make_shared<DrawstringProfile>(
      DrawstringProfile::desk(round_s3_constants(),
                              BoundaryFunction::constant(-1.0), 0.5,
                              round_s3_constants().r_I / 2.0));
  CHECK(verify_volume(ModelMetric::round_s3_drawstring(dround)).passed);
}

TEST_CASE("mean convexity report") {
  const ModelMetric m = ModelMetric::flat_torus_drawstring(certified_flat());
  const auto rep = verify_mean_convexity(m, {2000, 1e-9});
  CHECK(rep.passed);
  // trivial: H' = 1/r >= 1/(4 r log(1/r)) since log(1/r) > 4
  const auto consts = flat_torus_constants();
  const auto triv =
      std::make_shared<DrawstringProfile>(DrawstringProfile::trivial(consts));
  CHECK(verify_mean_convexity(ModelMetric::flat_torus_drawstring(triv),
                              {500, 1e-6})
            .passed);
  // round-S3 desk drawstring: baseline H = cot r - tan r
  const auto dround = std::make_shared<DrawstringProfile>(
      DrawstringProfile::desk(round_s3_constants(),
                              BoundaryFunction::constant(-1.0), 0.5,
                              round_s3_constants().r_I / 2.0));
  CHECK(verify_mean_convexity(ModelMetric::round_s3_drawstring(dround),
                              {2000, 1e-9})
            .passed);
}

TEST_CASE("h/u range report") {
  const ModelMetric m = ModelMetric::flat_torus_drawstring(desk_flat());
  const auto rep = verify_h_u_range(m, {2000, 1e-9});
  CHECK(rep.passed);
}

TEST_CASE("llarull levels") {
  const auto rep = verify_llarull({1, 10});
  CHECK(rep.passed);
  // table rows: i, min_eig, eig_bound, min_R, scal_bound
  for (const auto& row : rep.table_rows) {
    CHECK(row[1] >= row[2]);
    CHECK(row[3] >= row[4]);
    CHECK(row[3] <= 6.0 + 1e-6);  // deformation only ever helps, R ~ 6
  }
}

TEST_CASE("AF report") {
  for (double m : {0.1, 0.24}) {
    const auto rep = verify_af(m);
    CHECK(rep.passed);
    CHECK(rep.params.at("min_R") >= -1e-9);
    CHECK(rep.params.at("min_H") > 0.0);
  }
  CHECK_THROWS_AS(verify_af(0.25), std::invalid_argument);
  // spherical-cap region: R = 12 m from the closed form
  const ModelMetric af = ModelMetric::af_cap(0.1);
  CHECK(af.baseline_scalar(0.25) == doctest::Approx(1.2).epsilon(1e-14));
  CHECK(af.baseline_scalar(2.0) == 0.0);
}

TEST_CASE("monotone refinement: doubling the grid keeps the margins") {
  const ModelMetric m = ModelMetric::flat_torus_drawstring(desk_flat());
  const auto coarse = verify_scal_bound(m, 0.5, {1000, 1e-9});
  const auto fine = verify_scal_bound(m, 0.5, {2000, 1e-9});
  CHECK(coarse.passed == fine.passed);
  CHECK(std::fabs(coarse.worst_margin - fine.worst_margin) <=
        1e-3 * (1.0 + std::fabs(fine.worst_margin)));
}

TEST_CASE("report JSON and CSV output") {
  const ModelMetric m = ModelMetric::flat_torus_drawstring(desk_flat());
  auto rep = verify_scal_bound(m, 0.5, {200, 1e-6});
  const auto j = nlohmann::json::parse(rep.to_json());
  CHECK(j.at("check_id") == "thm2.4-III-scal-bound");
  CHECK(j.at("passed") == rep.passed);
  CHECK(j.at("n_points").get<long>() == rep.n_points);
  const std::string dir = "build/test-verifier-out";
  std::filesystem::create_directories(dir);
  rep.write_csv(dir + "/scal.csv");
  const std::string csv = read_text_file(dir + "/scal.csv");
  CHECK(csv.substr(0, csv.find('\n')) == "r,R_deformed,R_base,margin");
  CHECK(csv.find("\r") == std::string::npos);  // LF endings
}

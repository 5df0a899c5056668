#include "drawstring/models.hpp"

#include <cmath>
#include <memory>
#include <random>

#include "doctest.h"

using namespace drawstring;

namespace {

std::shared_ptr<const DrawstringProfile> desk_profile(double v0 = -1.0,
                                                      double eps = 0.5) {
  const auto consts = flat_torus_constants();
  return std::make_shared<DrawstringProfile>(DrawstringProfile::desk(
      consts, BoundaryFunction::constant(v0), eps, consts.r_I / 2.0));
}

}  // namespace

TEST_CASE("flat baseline coefficients") {
  const ModelMetric m = ModelMetric::flat_baseline();
  const Mat3 g = m.metric_at({{0.5, 1.0, 2.0}});
  CHECK(g(0, 0) == 1.0);
  CHECK(g(1, 1) == 0.25);
  CHECK(g(2, 2) == 1.0);
  CHECK(g(0, 1) == 0.0);
  CHECK(m.volume_element({{0.5, 1.0, 2.0}}) == doctest::Approx(0.5));
}

TEST_CASE("round S3 baseline coefficients") {
  const ModelMetric m = ModelMetric::round_s3_baseline();
  const double r = 0.7;
  const Mat3 g = m.metric_at({{r, 0.3, 0.4}});
  CHECK(g(1, 1) == doctest::Approx(std::sin(r) * std::sin(r)));
  CHECK(g(2, 2) == doctest::Approx(std::cos(r) * std::cos(r)));
}

TEST_CASE("drawstring equals baseline outside r1") {
  const auto prof = desk_profile();
  const ModelMetric d = ModelMetric::flat_torus_drawstring(prof);
  const ModelMetric b = ModelMetric::flat_baseline();
  for (double r : {prof->r1(), prof->r1() * 1.3, prof->consts().r_I * 0.9}) {
    const Mat3 gd = d.metric_at({{r, 0.2, 1.0}});
    const Mat3 gb = b.metric_at({{r, 0.2, 1.0}});
    for (int i = 0; i < 3; ++i) CHECK(gd(i, i) == gb(i, i));
  }
  const ModelMetric ds = ModelMetric::round_s3_drawstring(desk_profile());
  const ModelMetric bs = ModelMetric::round_s3_baseline();
  const double r = prof->r1() * 2.0;
  const Mat3 gd = ds.metric_at({{r, 0.2, 1.0}});
  const Mat3 gb = bs.metric_at({{r, 0.2, 1.0}});
  for (int i = 0; i < 3; ++i) CHECK(gd(i, i) == gb(i, i));
}

TEST_CASE("AF coefficients and vm_eval") {
  CHECK(vm_eval(0.1, 0.25, 0) == doctest::Approx(0.9875).epsilon(1e-15));
  CHECK(vm_eval(0.1, 2.0, 0) == doctest::Approx(0.9).epsilon(1e-15));
  CHECK(vm_eval(0.2, 0.0, 0) == 1.0);
  CHECK_THROWS_AS(vm_eval(0.25, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(vm_eval(0.3, 1.0, 0), std::invalid_argument);
  CHECK_THROWS_AS(ModelMetric::af_cap(0.25), std::invalid_argument);
  const ModelMetric m = ModelMetric::af_cap(0.1);
  const Mat3 g = m.metric_at({{2.0, 1.5707963267948966, 0.0}});
  CHECK(g(0, 0) == doctest::Approx(1.0 / 0.9).epsilon(1e-15));
  CHECK(g(1, 1) == doctest::Approx(4.0));
  // V' continuity across the cutoff window by finite differences
  for (double r : {0.45, 0.6, 0.8, 1.2}) {
    const double h = 1e-6;
    const double fd =
        (vm_eval(0.1, r + h, 0) - vm_eval(0.1, r - h, 0)) / (2 * h);
    CHECK(fd == doctest::Approx(vm_eval(0.1, r, 1)).epsilon(1e-6));
  }
}

TEST_CASE("SPD at random valid chart points") {
  std::mt19937_64 rng(20240811);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  const auto prof = desk_profile();
  const std::vector<ModelMetric> models = {
      ModelMetric::flat_baseline(),
      ModelMetric::flat_torus_drawstring(prof),
      ModelMetric::round_s3_baseline(),
      ModelMetric::round_s3_drawstring(desk_profile()),
      ModelMetric::af_cap(0.1),
      ModelMetric::conformal_inversion_sphere(0.1),
      ModelMetric::prototype_warped(0.01, 0.1)};
  for (const auto& m : models) {
    const double top = std::min(m.r_max() * 0.98, 3.0);
    double min_eig = 1e300;
    for (int k = 0; k < 10000; ++k) {
      const double r = 1e-6 + (top - 1e-6) * unif(rng);
      ChartPoint x{{r, 6.28 * unif(rng), 0.5 + unif(rng)}};
      const Mat3 g = m.metric_at(x);
      for (int i = 0; i < 3; ++i) min_eig = std::min(min_eig, g(i, i));
    }
    CHECK(min_eig > 0.0);
  }
}

TEST_CASE("domain errors name the offending coordinate") {
  const ModelMetric m = ModelMetric::round_s3_baseline();
  CHECK_THROWS_AS(m.metric_at({{-0.1, 0, 0}}), std::domain_error);
  CHECK_THROWS_AS(m.metric_at({{1.6, 0, 0}}), std::domain_error);
  CHECK_THROWS_WITH_AS(m.metric_at({{0.0, 0, 0}}),
                       doctest::Contains("coordinate r"), std::domain_error);
}

TEST_CASE("volume element matches the e^{-pu} h form") {
  const auto prof = desk_profile();
  const ModelMetric d = ModelMetric::flat_torus_drawstring(prof);
  for (double r : {prof->r2().value * 3.0, prof->r1() / 3.0, prof->r1() / 1.5}) {
    ChartPoint x{{r, 0.7, 0.3}};
    const double u = prof->u(0.3, r);
    const double direct = std::exp(-u) * prof->h(r) * r;
    CHECK(d.volume_element(x) == doctest::Approx(direct).epsilon(1e-12));
  }
}

TEST_CASE("drawstring coefficients approach the baseline as c1, v0 -> 0") {
  const auto consts = flat_torus_constants();
  const double r1 = consts.r_I / 2.0;
  const ModelMetric base = ModelMetric::flat_baseline();
  for (double scale : {1.0, 0.25, 1.0 / 16}) {
    const double c1 = 0.005 * scale, v0c = -0.5 * scale;
    const auto prof = std::make_shared<DrawstringProfile>(
        DrawstringProfile::with_params(consts, BoundaryFunction::constant(v0c),
                                       0.5, r1, c1,
                                       TinyRadius::from_value(r1 / 256.0)));
    const ModelMetric d = ModelMetric::flat_torus_drawstring(prof);
    double worst = 0.0;
    for (int k = 1; k <= 100; ++k) {
      const double r = consts.r_I * k / 101.0;
      const Mat3 gd = d.metric_at({{r, 0.2, 0.9}});
      const Mat3 gb = base.metric_at({{r, 0.2, 0.9}});
      for (int i = 0; i < 3; ++i)
        worst = std::max(
            worst, std::fabs(gd(i, i) - gb(i, i)) / std::max(1.0, gb(i, i)));
    }
    CHECK(worst <= 3.0 * (c1 + std::fabs(v0c)));
  }
}

TEST_CASE("round-S3 drawstring relative eigenvalues on 1-forms") {
  const auto prof = desk_profile();
  const ModelMetric d = ModelMetric::round_s3_drawstring(prof);
  const ModelMetric b = ModelMetric::round_s3_baseline();
  for (double r : {prof->r1() / 5.0, prof->r1() / 2.0}) {
    ChartPoint x{{r, 0.4, 1.2}};
    const Mat3 gd = d.metric_at(x);
    const Mat3 gb = b.metric_at(x);
    const double u = prof->u(1.2, r);
    const double h = prof->h(r);
    CHECK(std::sqrt(gd(0, 0) / gb(0, 0)) ==
          doctest::Approx(std::exp(-u)).epsilon(1e-12));
    CHECK(std::sqrt(gd(1, 1) / gb(1, 1)) ==
          doctest::Approx(std::exp(-u) * h).epsilon(1e-12));
    CHECK(std::sqrt(gd(2, 2) / gb(2, 2)) ==
          doctest::Approx(std::exp(u)).epsilon(1e-12));
  }
}

TEST_CASE("AF converges to flat polar as m -> 0") {
  for (double r : {0.3, 0.8, 2.0}) {
    double prev = 1e300;
    for (double m : {0.1, 0.01, 0.001}) {
      const ModelMetric af = ModelMetric::af_cap(m);
      const Mat3 g = af.metric_at({{r, 1.5707963267948966, 0.0}});
      const double dev = std::fabs(g(0, 0) - 1.0);
      CHECK(dev < prev);
      prev = dev;
    }
  }
}

TEST_CASE("preset names round trip") {
  for (Preset p : {Preset::FlatBaseline, Preset::FlatTorusDrawstring,
                   Preset::RoundS3Baseline, Preset::RoundS3Drawstring,
                   Preset::AFSchwarzschildCap,
                   Preset::ConformalInversionSphere, Preset::PrototypeWarped})
    CHECK(preset_from_name(preset_name(p)) == p);
  CHECK_THROWS_AS(preset_from_name("nope"), std::invalid_argument);
}

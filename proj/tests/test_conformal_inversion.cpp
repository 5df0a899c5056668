#include "drawstring/conformal_inversion.hpp"

#include <cmath>

#include "doctest.h"
#include "drawstring/curvature.hpp"
#include "drawstring/models.hpp"
#include "oracles.hpp"

using namespace drawstring;

TEST_CASE("phi_delta values and pole") {
  // sin^2(pi/2) = 1 makes the log argument (1+delta)/(1+delta)
  for (double d : {0.0, 0.01, 0.5, 3.0})
    CHECK(phi_delta(1.5707963267948966, d) == doctest::Approx(1.0));
  // large delta flattens phi to 1 uniformly
  for (double r : {0.1, 1.0, 2.5})
    CHECK(phi_delta(r, 1e9) == doctest::Approx(1.0).epsilon(1e-8));
  // delta = 0 small-r growth: -log sin r + 1
  CHECK(phi_delta(1e-3, 0.0) ==
        doctest::Approx(-std::log(std::sin(1e-3)) + 1.0).epsilon(1e-14));
  CHECK(phi_delta(1e-3, 0.0) > std::log(1000.0));
  CHECK_THROWS_AS(phi_delta(0.0, 0.0), std::domain_error);
  CHECK(phi_delta(0.0, 0.5) > 1.0);
  // phi >= 1 on (0, pi)
  for (double r = 0.05; r < 3.1; r += 0.05)
    for (double d : {0.0, 0.2, 2.0}) CHECK(phi_delta(r, d) >= 1.0);
}

TEST_CASE("phi derivatives match finite differences") {
  for (double d : {0.01, 0.3}) {
    const auto f = [d](double r) { return phi_delta(r, d); };
    for (double r : {0.2, 0.9, 1.8, 2.8}) {
      CHECK(oracles::fd1(f, r, 1e-6) ==
            doctest::Approx(phi_delta_deriv(r, d, 1)).epsilon(1e-7));
      CHECK(oracles::fd2(f, r, 1e-5) ==
            doctest::Approx(phi_delta_deriv(r, d, 2)).epsilon(1e-5));
    }
  }
}

TEST_CASE("supersolution and conformal sign equivalence") {
  for (double d : {0.01, 0.1, 1.0}) {
    const auto rep = supersolution_check(d, 1000);
    CHECK(rep.passed);
    CHECK(rep.max_residual_round <= 0.0 + 1e-12);
    CHECK(rep.max_residual_conformal <= 1e-7);
    CHECK(rep.worst_sign_product >= -1e-7);
  }
  // the residual peaks at -delta/(1+delta) (phi = 1 at the equator)
  const auto rep = supersolution_check(0.01, 2000);
  CHECK(rep.max_residual_round ==
        doctest::Approx(-0.01 / 1.01).epsilon(1e-6));
}

TEST_CASE("curve: monotone r_tilde and self-inverse interpolation") {
  const InversionCurve c = build_inversion_curve(0.0, 1e-10, 2048);
  for (size_t k = 1; k < c.r_tilde.size(); ++k)
    CHECK(c.r_tilde[k] > c.r_tilde[k - 1]);
  // numerical inverse composed with itself is the identity
  for (double rt : {1e-8, 1e-6, 1e-3, 0.5}) {
    const double r = c.r_at_rtilde(rt);
    // forward map by direct quadrature from a nearby tabulated node
    size_t lo = 0;
    while (lo + 1 < c.r.size() && c.r[lo + 1] <= r) ++lo;
    const double rt_back =
        c.r_tilde[lo] + oracles::integrate_gk(
                            [&](double rho) { return phi_delta(rho, 0.0); },
                            c.r[lo], r, 1e-16);
    CHECK(rt_back == doctest::Approx(rt).epsilon(1e-9));
  }
  // delta = 0 head asymptotics: r_tilde / (r log(1/r)) -> 1
  const double r0 = c.r.front();
  CHECK(c.r_tilde.front() / (r0 * std::log(1.0 / r0)) ==
        doctest::Approx(1.0).epsilon(0.1));
  // large delta: r_tilde ~ r, f ~ sin r, u ~ 0
  const InversionCurve cb = build_inversion_curve(50.0, 1e-6, 256);
  for (size_t k = 0; k < cb.r.size(); k += 50) {
    CHECK(cb.r_tilde[k] == doctest::Approx(cb.r[k]).epsilon(1e-2));
    CHECK(cb.f[k] == doctest::Approx(std::sin(cb.r[k])).epsilon(1e-2));
    CHECK(std::fabs(cb.u[k]) < 1e-2);
  }
  // Lemma asymptotics: r log(1/r_tilde) / r_tilde -> 1
  const double rt = 1e-8;
  const double rr = c.r_at_rtilde(rt);
  CHECK(rr * std::log(1.0 / rt) / rt == doctest::Approx(1.0).epsilon(0.15));
}

TEST_CASE("reconstructed drawstring form matches the conformal form") {
  // e^{-2u}(dr~^2 + f^2 dth^2) + e^{2u} dt^2 pulled back through r~(r)
  // must reproduce phi^4 dr^2 + phi^4 sin^2 r dth^2 + phi^-2 dt^2
  const InversionCurve c = build_inversion_curve(0.0, 1e-10, 8192);
  const ModelMetric m = ModelMetric::conformal_inversion_sphere(0.0);
  int checked = 0;
  for (size_t k = 400; k < c.r.size() && checked < 100; k += 70, ++checked) {
    const double r = c.r[k], rt = c.r_tilde[k];
    const double phi = phi_delta(r, 0.0);
    const double drt_dr = phi;  // d r~ / d r
    const double e2u = std::exp(2.0 * c.u[k]);
    const Mat3 g = m.metric_at({{r, 1.0, 0.0}});
    CHECK((1.0 / e2u) * drt_dr * drt_dr ==
          doctest::Approx(g(0, 0)).epsilon(1e-8));
    CHECK((1.0 / e2u) * c.f[k] * c.f[k] ==
          doctest::Approx(g(1, 1)).epsilon(1e-8));
    CHECK(e2u == doctest::Approx(g(2, 2)).epsilon(1e-8));
    (void)rt;
  }
  CHECK(checked == 100);
}

TEST_CASE("conformal-inversion metric curvature is consistent") {
  const ModelMetric m = ModelMetric::conformal_inversion_sphere(0.1);
  for (double r : {0.4, 1.0, 2.2}) {
    const double rc = warped_scalar(m, {{r, 1.0, 0.0}});
    const double rf = fd_scalar_richardson(m, {{r, 1.0, 0.0}}, fd_step(r));
    CHECK(rc == doctest::Approx(rf).epsilon(1e-5));
  }
}

TEST_CASE("asymptotics: A and B trends") {
  const InversionCurve deep = build_inversion_curve(0.0, 1e-70, 8192);
  const auto rep = asymptotics_check(deep);
  CHECK(rep.passed);
  CHECK(std::fabs(rep.final_A) < 0.05);
  CHECK(std::fabs(rep.final_B + 1.0) < 0.05);
  CHECK(rep.decreasing_tail);

  // at r_tilde = 1e-6 the o(1) terms are still visible: A ~ -0.25,
  // B + 1 ~ +0.26 (frozen from an independent high-precision evaluation)
  const double A6 = deep.u_at_rtilde(1e-6) + std::log(std::log(1e6));
  const double B6 =
      (deep.f_at_rtilde(1e-6) / 1e-6 - 1.0) * std::log(1e6);
  CHECK(A6 == doctest::Approx(-0.2504).epsilon(5e-3));
  CHECK(B6 == doctest::Approx(-0.7370).epsilon(5e-3));

  // range guard: a shallow curve cannot support the check
  const InversionCurve shallow = build_inversion_curve(0.0, 1e-4, 512);
  CHECK_THROWS_AS(asymptotics_check(shallow), std::out_of_range);
}

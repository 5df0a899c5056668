#include "drawstring/cutoffs.hpp"

#include <cmath>

#include "doctest.h"
#include "oracles.hpp"

using namespace drawstring;

TEST_CASE("flat regions and transition values") {
  const CutoffFn zeta = make_cutoff(CutoffKind::RisingZeta,
                                    CutoffSmoothness::C2PiecewiseQuadratic);
  const CutoffFn eta = make_cutoff(CutoffKind::FallingEta,
                                   CutoffSmoothness::C2PiecewiseQuadratic);
  CHECK(zeta.eval(0.5, 0) == 0.0);
  CHECK(zeta.eval(1.0, 0) == 1.0);
  CHECK(eta.eval(0.25, 0) == 1.0);
  CHECK(eta.eval(2.0, 0) == 0.0);
  // symmetry of the bang-bang ramp about the window midpoint
  CHECK(zeta.eval(0.75, 0) == doctest::Approx(0.5).epsilon(1e-15));
  // constant regions are exact
  CHECK(cutoff_eval(zeta, 0.3, 1) == 0.0);
  CHECK(cutoff_eval(eta, 1.5, 0) == 0.0);
  CHECK(cutoff_eval(zeta, 0.1, 2) == 0.0);
  // peak slope from the area constraint (integral of zeta' = 1 over width 1/2)
  CHECK(cutoff_eval(zeta, 0.75, 1) == doctest::Approx(4.0).epsilon(1e-15));
}

TEST_CASE("derivative order validation") {
  const CutoffFn zeta = make_cutoff(CutoffKind::RisingZeta,
                                    CutoffSmoothness::C2PiecewiseQuadratic);
  CHECK_THROWS_AS(cutoff_eval(zeta, 0.5, 3), std::invalid_argument);
  CHECK_THROWS_AS(cutoff_eval(zeta, 0.5, -1), std::invalid_argument);
}

TEST_CASE("bound invariants on a dense grid") {
  for (auto smooth : {CutoffSmoothness::C2PiecewiseQuadratic,
                      CutoffSmoothness::MollifiedSmooth}) {
    const CutoffFn zeta = make_cutoff(CutoffKind::RisingZeta, smooth);
    const CutoffFn eta = make_cutoff(CutoffKind::FallingEta, smooth);
    const double kz = zeta.slack();
    double min0 = 1e9, max0 = -1e9, max1 = -1e9, min1 = 1e9, max2 = -1e9;
    double emax1 = -1e9, emin1 = 1e9;
    for (double t = 0.0; t <= 1.5; t += 1e-4) {
      const double v = zeta.eval(t, 0);
      min0 = std::min(min0, v);
      max0 = std::max(max0, v);
      max1 = std::max(max1, zeta.eval(t, 1));
      min1 = std::min(min1, zeta.eval(t, 1));
      max2 = std::max(max2, std::fabs(zeta.eval(t, 2)));
      emax1 = std::max(emax1, eta.eval(t, 1));
      emin1 = std::min(emin1, eta.eval(t, 1));
    }
    CHECK(min0 >= 0.0);
    CHECK(max0 <= 1.0);
    CHECK(min1 >= 0.0);
    CHECK(max1 <= 4.0 + kz + 1e-12);
    CHECK(max2 <= 16.0 + kz + 1e-12);
    // eta mirrors: 0 >= eta' >= -(4 + kappa)
    CHECK(emax1 <= 1e-15);
    CHECK(emin1 >= -(4.0 + kz) - 1e-12);
  }
}

TEST_CASE("finite differences match stated derivatives away from kinks") {
  for (auto smooth : {CutoffSmoothness::C2PiecewiseQuadratic,
                      CutoffSmoothness::MollifiedSmooth}) {
    const CutoffFn zeta = make_cutoff(CutoffKind::RisingZeta, smooth);
    const auto f0 = [&](double t) { return zeta.eval(t, 0); };
    const auto f1 = [&](double t) { return zeta.eval(t, 1); };
    for (double t : {0.55, 0.6, 0.7, 0.8, 0.9, 0.97}) {
      CHECK(oracles::fd1(f0, t, 1e-5) ==
            doctest::Approx(zeta.eval(t, 1)).epsilon(1e-6));
      CHECK(oracles::fd1(f1, t, 1e-5) ==
            doctest::Approx(zeta.eval(t, 2)).epsilon(1e-5));
    }
  }
}

TEST_CASE("mollified slack validation") {
  CHECK_THROWS_AS(
      make_cutoff(CutoffKind::RisingZeta, CutoffSmoothness::MollifiedSmooth,
                  1.0),
      std::invalid_argument);
  const CutoffFn z = make_cutoff(CutoffKind::RisingZeta,
                                 CutoffSmoothness::MollifiedSmooth, 30.0);
  CHECK(z.slack() == 30.0);
  CHECK(make_cutoff(CutoffKind::RisingZeta,
                    CutoffSmoothness::C2PiecewiseQuadratic)
            .slack() == 0.0);
}

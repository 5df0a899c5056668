#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>

namespace drawstring {

// A radius in (0, 1/e) that may lie far below the smallest positive double.
// Canonical storage is loglog_inv = log(log(1/r)); value and log_inv are
// populated only when they fit in a double. The inner radius r2 selected by
// the normalization I(r2) = 1 satisfies log(1/r2) ~ exp(1/c2), which
// overflows any float format once c2 is small, so exact comparisons and the
// profile integrals are carried out on the loglog scale.
struct TinyRadius {
  double value = 0.0;        // r, or 0 when it underflows
  double log_inv = std::numeric_limits<double>::infinity();  // log(1/r)
  double loglog_inv = 0.0;   // log(log(1/r)), always finite

  static TinyRadius from_value(double r) {
    if (!(r > 0.0) || r >= 0.3678794411714423)
      throw std::invalid_argument("TinyRadius: need 0 < r < 1/e");
    TinyRadius t;
    t.value = r;
    t.log_inv = std::log(1.0 / r);
    t.loglog_inv = std::log(t.log_inv);
    return t;
  }

  static TinyRadius from_loglog_inv(double lam) {
    if (!std::isfinite(lam) || lam <= 0.0)
      throw std::invalid_argument("TinyRadius: loglog(1/r) must be positive");
    TinyRadius t;
    t.loglog_inv = lam;
    if (lam < 6.55) {  // log_inv below ~700: r representable at full precision
      t.log_inv = std::exp(lam);
      t.value = std::exp(-t.log_inv);
    }
    return t;
  }

  bool representable() const { return value > 0.0; }

  // r scaled by a modest factor k > 0 (k*r as a TinyRadius)
  TinyRadius scaled(double k) const {
    TinyRadius t;
    if (representable()) return from_value(value * k);
    // log(1/(k r)) = log_inv - log k; the shift vanishes at loglog scale
    t.loglog_inv = loglog_inv;
    return t;
  }
};

}  // namespace drawstring

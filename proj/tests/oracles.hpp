// Test-only oracles, independent of the production code paths they check.
#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <vector>

#include "drawstring/pulled_metric.hpp"

namespace oracles {

// Adaptive Gauss-Kronrod 7-15 quadrature (independent of the production
// adaptive Simpson rule).
namespace gk_detail {
// G7-K15 nodes/weights on [-1, 1]
inline const double kx[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769,
    -0.741531185599394, -0.586087235467691, -0.405845151377397,
    -0.207784955007898, 0.0,                0.207784955007898,
    0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
inline const double kw[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728, 0.204432940075298,
    0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
inline const double gw[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119,
    0.417959183673469, 0.381830050505119, 0.279705391489277,
    0.129484966168870};

template <class F>
void panel(F&& f, double a, double b, double* kres, double* err) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  double kr = 0.0, gr = 0.0;
  for (int i = 0; i < 15; ++i) {
    const double v = f(c + h * kx[i]);
    kr += kw[i] * v;
    if (i % 2 == 1) gr += gw[i / 2] * v;
  }
  *kres = kr * h;
  *err = std::fabs((kr - gr) * h);
}
}  // namespace gk_detail

template <class F>
double integrate_gk(F&& f, double a, double b, double tol = 1e-12,
                    int max_splits = 20000) {
  struct Seg {
    double a, b, val, err;
  };
  std::vector<Seg> segs;
  double v, e;
  gk_detail::panel(f, a, b, &v, &e);
  segs.push_back({a, b, v, e});
  for (int it = 0; it < max_splits; ++it) {
    double total_err = 0.0;
    size_t worst = 0;
    for (size_t i = 0; i < segs.size(); ++i) {
      total_err += segs[i].err;
      if (segs[i].err > segs[worst].err) worst = i;
    }
    if (total_err < tol) break;
    const Seg s = segs[worst];
    const double m = 0.5 * (s.a + s.b);
    Seg l{s.a, m, 0, 0}, r{m, s.b, 0, 0};
    gk_detail::panel(f, l.a, l.b, &l.val, &l.err);
    gk_detail::panel(f, r.a, r.b, &r.val, &r.err);
    segs[worst] = l;
    segs.push_back(r);
  }
  double total = 0.0;
  for (const auto& s : segs) total += s.val;
  return total;
}

// central finite differences of a scalar function
template <class F>
double fd1(F&& f, double x, double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}
template <class F>
double fd2(F&& f, double x, double h) {
  return (f(x + h) - 2.0 * f(x) + f(x - h)) / (h * h);
}

// Brute-force c-partially pulled distance by crossing-sequence dynamic
// programming with at most max_legs pulled legs:
//   d_c(x,y) = min( d_M(x,y),
//                   min_k min over (p_1,q_1..p_k,q_k) in K of
//                     d_M(x,p_1) + e^{-c} d_K(p_1,q_1) + ... + d_M(q_k,y) )
// d_M uses the full graph, d_K only K-internal edges.
class BruteForcePulled {
 public:
  explicit BruteForcePulled(const drawstring::PulledSpace& sp) : sp_(sp) {
    const size_t n = sp.size();
    dM_.assign(n, std::vector<double>(n, inf()));
    dK_.assign(n, std::vector<double>(n, inf()));
    for (size_t i = 0; i < n; ++i) {
      dM_[i][i] = 0.0;
      dK_[i][i] = sp.in_k[i] ? 0.0 : inf();
    }
    for (const auto& e : sp.edges) {
      dM_[e.a][e.b] = std::min(dM_[e.a][e.b], e.weight);
      dM_[e.b][e.a] = dM_[e.a][e.b];
      if (sp.in_k[e.a] && sp.in_k[e.b]) {
        dK_[e.a][e.b] = std::min(dK_[e.a][e.b], e.weight);
        dK_[e.b][e.a] = dK_[e.a][e.b];
      }
    }
    floyd(&dM_);
    floyd(&dK_);
    for (uint32_t v = 0; v < n; ++v)
      if (sp.in_k[v]) knodes_.push_back(v);
  }

  double distance(uint32_t x, uint32_t y, double c, int max_legs = 3) const {
    const double scale = std::isinf(c) ? 0.0 : std::exp(-c);
    double best = dM_[x][y];
    // A[q] = best cost from x to q in K having just finished a pulled leg
    std::vector<double> A(knodes_.size(), inf());
    for (size_t qi = 0; qi < knodes_.size(); ++qi)
      for (size_t pi = 0; pi < knodes_.size(); ++pi) {
        const double v =
            dM_[x][knodes_[pi]] + scale * dK_[knodes_[pi]][knodes_[qi]];
        A[qi] = std::min(A[qi], v);
      }
    for (int leg = 1; leg <= max_legs; ++leg) {
      for (size_t qi = 0; qi < knodes_.size(); ++qi)
        best = std::min(best, A[qi] + dM_[knodes_[qi]][y]);
      if (leg == max_legs) break;
      std::vector<double> next(knodes_.size(), inf());
      for (size_t qi = 0; qi < knodes_.size(); ++qi)
        for (size_t pi = 0; pi < knodes_.size(); ++pi)
          for (size_t q2 = 0; q2 < knodes_.size(); ++q2) {
            const double v = A[qi] + dM_[knodes_[qi]][knodes_[pi]] +
                             scale * dK_[knodes_[pi]][knodes_[q2]];
            next[q2] = std::min(next[q2], v);
          }
      A.swap(next);
    }
    return best;
  }

 private:
  static double inf() { return std::numeric_limits<double>::infinity(); }
  static void floyd(std::vector<std::vector<double>>* d) {
    const size_t n = d->size();
    for (size_t k = 0; k < n; ++k)
      for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j)
          (*d)[i][j] = std::min((*d)[i][j], (*d)[i][k] + (*d)[k][j]);
  }
  const drawstring::PulledSpace& sp_;
  std::vector<std::vector<double>> dM_, dK_;
  std::vector<uint32_t> knodes_;
};

// analytic geodesic distance on the unit 3-sphere between Fermi-chart points
// about the great circle (cos t, sin t, 0, 0)
inline double s3_distance(const std::array<double, 3>& a,
                          const std::array<double, 3>& b) {
  const auto embed = [](const std::array<double, 3>& p) {
    const double r = p[0], th = p[1], t = p[2];
    return std::array<double, 4>{std::cos(r) * std::cos(t),
                                 std::cos(r) * std::sin(t),
                                 std::sin(r) * std::cos(th),
                                 std::sin(r) * std::sin(th)};
  };
  const auto ea = embed(a), eb = embed(b);
  double dot = 0.0;
  for (int k = 0; k < 4; ++k) dot += ea[k] * eb[k];
  dot = std::max(-1.0, std::min(1.0, dot));
  return std::acos(dot);
}

}  // namespace oracles

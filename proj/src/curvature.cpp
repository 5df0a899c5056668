#include "drawstring/curvature.hpp"

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace drawstring {

double prototype_scalar(double r, double c1, double c2) {
  if (!(r > 0) || !(r < 1))
    throw std::domain_error("prototype_scalar: need 0 < r < 1");
  const double s = std::log(1.0 / r);
  if (s <= c1)
    throw std::domain_error("prototype_scalar: pole, log(1/r) <= c1");
  return 2.0 / (r * r * std::pow(s, 2.0 + 2.0 * c2)) *
         (c1 * (c1 + 2.0) / (s - c1) + c1 - c2 * c2);
}

namespace {

constexpr int kMaxDim = 3;

struct SmallMat {
  double a[kMaxDim][kMaxDim] = {};
};

// symmetric eigenvalue range by cyclic Jacobi (dim <= 3)
void sym_eigen_range(const SmallMat& g, int dim, double* lo, double* hi) {
  double a[kMaxDim][kMaxDim];
  std::memcpy(a, g.a, sizeof(a));
  for (int sweep = 0; sweep < 32; ++sweep) {
    double off = 0.0;
    for (int i = 0; i < dim; ++i)
      for (int j = i + 1; j < dim; ++j) off += a[i][j] * a[i][j];
    if (off < 1e-30) break;
    for (int p = 0; p < dim; ++p)
      for (int q = p + 1; q < dim; ++q) {
        if (std::fabs(a[p][q]) < 1e-300) continue;
        const double theta = 0.5 * std::atan2(2.0 * a[p][q], a[q][q] - a[p][p]);
        const double c = std::cos(theta), s = std::sin(theta);
        for (int k = 0; k < dim; ++k) {
          const double akp = a[k][p], akq = a[k][q];
          a[k][p] = c * akp - s * akq;
          a[k][q] = s * akp + c * akq;
        }
        for (int k = 0; k < dim; ++k) {
          const double apk = a[p][k], aqk = a[q][k];
          a[p][k] = c * apk - s * aqk;
          a[q][k] = s * apk + c * aqk;
        }
      }
  }
  *lo = a[0][0];
  *hi = a[0][0];
  for (int i = 1; i < dim; ++i) {
    *lo = std::min(*lo, a[i][i]);
    *hi = std::max(*hi, a[i][i]);
  }
}

void invert(const SmallMat& g, int dim, SmallMat* out) {
  if (dim == 2) {
    const double det = g.a[0][0] * g.a[1][1] - g.a[0][1] * g.a[1][0];
    out->a[0][0] = g.a[1][1] / det;
    out->a[1][1] = g.a[0][0] / det;
    out->a[0][1] = -g.a[0][1] / det;
    out->a[1][0] = -g.a[1][0] / det;
    return;
  }
  const auto& m = g.a;
  const double det = m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) -
                     m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0]) +
                     m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0]);
  out->a[0][0] = (m[1][1] * m[2][2] - m[1][2] * m[2][1]) / det;
  out->a[0][1] = (m[0][2] * m[2][1] - m[0][1] * m[2][2]) / det;
  out->a[0][2] = (m[0][1] * m[1][2] - m[0][2] * m[1][1]) / det;
  out->a[1][0] = (m[1][2] * m[2][0] - m[1][0] * m[2][2]) / det;
  out->a[1][1] = (m[0][0] * m[2][2] - m[0][2] * m[2][0]) / det;
  out->a[1][2] = (m[0][2] * m[1][0] - m[0][0] * m[1][2]) / det;
  out->a[2][0] = (m[1][0] * m[2][1] - m[1][1] * m[2][0]) / det;
  out->a[2][1] = (m[0][1] * m[2][0] - m[0][0] * m[2][1]) / det;
  out->a[2][2] = (m[0][0] * m[1][1] - m[0][1] * m[1][0]) / det;
}

}  // namespace

double fd_scalar_generic(const MetricFn& metric, const double* x, double step,
                         int dim) {
  if (dim < 2 || dim > kMaxDim)
    throw std::invalid_argument("fd_scalar_generic: dim must be 2 or 3");
  if (!(step > 0)) throw std::invalid_argument("fd_scalar_generic: step <= 0");

  const auto eval = [&](const double* p, SmallMat* g) {
    double buf[kMaxDim * kMaxDim];
    metric(p, buf);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) g->a[i][j] = buf[i * dim + j];
  };

  SmallMat g0;
  eval(x, &g0);
  double lo, hi;
  sym_eigen_range(g0, dim, &lo, &hi);
  if (!(lo > 0) || hi / lo > 1e12)
    throw std::runtime_error(
        "fd_scalar: coefficient matrix near-singular at center point");

  SmallMat ginv;
  invert(g0, dim, &ginv);

  // dg[k](i,j) = d_k g_ij, d2g[k][l](i,j) = d_k d_l g_ij
  SmallMat dg[kMaxDim], d2g[kMaxDim][kMaxDim];
  double xp[kMaxDim], xm[kMaxDim];
  for (int k = 0; k < dim; ++k) {
    std::memcpy(xp, x, sizeof(double) * dim);
    std::memcpy(xm, x, sizeof(double) * dim);
    xp[k] += step;
    xm[k] -= step;
    SmallMat gp, gm;
    eval(xp, &gp);
    eval(xm, &gm);
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        dg[k].a[i][j] = (gp.a[i][j] - gm.a[i][j]) / (2.0 * step);
        d2g[k][k].a[i][j] =
            (gp.a[i][j] - 2.0 * g0.a[i][j] + gm.a[i][j]) / (step * step);
      }
  }
  for (int k = 0; k < dim; ++k)
    for (int l = k + 1; l < dim; ++l) {
      SmallMat gpp, gpm, gmp, gmm;
      double p1[kMaxDim];
      std::memcpy(p1, x, sizeof(double) * dim);
      p1[k] += step; p1[l] += step; eval(p1, &gpp);
      std::memcpy(p1, x, sizeof(double) * dim);
      p1[k] += step; p1[l] -= step; eval(p1, &gpm);
      std::memcpy(p1, x, sizeof(double) * dim);
      p1[k] -= step; p1[l] += step; eval(p1, &gmp);
      std::memcpy(p1, x, sizeof(double) * dim);
      p1[k] -= step; p1[l] -= step; eval(p1, &gmm);
      for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) {
          const double v = (gpp.a[i][j] - gpm.a[i][j] - gmp.a[i][j] +
                            gmm.a[i][j]) / (4.0 * step * step);
          d2g[k][l].a[i][j] = v;
          d2g[l][k].a[i][j] = v;
        }
    }

  // T[k](i,j) = d_i g_kj + d_j g_ki - d_k g_ij ; Gamma^m_ij = 1/2 g^mk T[k]
  double T[kMaxDim][kMaxDim][kMaxDim];
  for (int k = 0; k < dim; ++k)
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j)
        T[k][i][j] = dg[i].a[k][j] + dg[j].a[k][i] - dg[k].a[i][j];

  double Gam[kMaxDim][kMaxDim][kMaxDim] = {};
  for (int m = 0; m < dim; ++m)
    for (int i = 0; i < dim; ++i)
      for (int j = 0; j < dim; ++j) {
        double v = 0.0;
        for (int k = 0; k < dim; ++k) v += ginv.a[m][k] * T[k][i][j];
        Gam[m][i][j] = 0.5 * v;
      }

  // d_l g^{mk} = -g^{ma} (d_l g_ab) g^{bk}
  double dginv[kMaxDim][kMaxDim][kMaxDim] = {};
  for (int l = 0; l < dim; ++l)
    for (int m = 0; m < dim; ++m)
      for (int k = 0; k < dim; ++k) {
        double v = 0.0;
        for (int a = 0; a < dim; ++a)
          for (int b = 0; b < dim; ++b)
            v -= ginv.a[m][a] * dg[l].a[a][b] * ginv.a[b][k];
        dginv[l][m][k] = v;
      }

  // d_l Gamma^m_ij = 1/2 [ d_l g^{mk} T[k] + g^{mk} d_l T[k] ]
  const auto dGam = [&](int l, int m, int i, int j) {
    double v = 0.0;
    for (int k = 0; k < dim; ++k) {
      const double dT = d2g[l][i].a[k][j] + d2g[l][j].a[k][i] -
                        d2g[l][k].a[i][j];
      v += dginv[l][m][k] * T[k][i][j] + ginv.a[m][k] * dT;
    }
    return 0.5 * v;
  };

  double R = 0.0;
  for (int i = 0; i < dim; ++i)
    for (int j = 0; j < dim; ++j) {
      double ric = 0.0;
      for (int k = 0; k < dim; ++k) {
        ric += dGam(k, k, i, j) - dGam(i, k, k, j);
        for (int l = 0; l < dim; ++l)
          ric += Gam[k][k][l] * Gam[l][i][j] - Gam[k][i][l] * Gam[l][k][j];
      }
      R += ginv.a[i][j] * ric;
    }
  return R;
}

double fd_scalar(const ModelMetric& model, const ChartPoint& x, double step) {
  const MetricFn fn = [&model](const double* p, double* g) {
    ChartPoint q;
    q.x = {p[0], p[1], p[2]};
    const Mat3 mg = model.metric_at(q);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) g[i * 3 + j] = mg(i, j);
  };
  return fd_scalar_generic(fn, x.x.data(), step, 3);
}

double fd_scalar_richardson(const ModelMetric& model, const ChartPoint& x,
                            double step) {
  const double c = fd_scalar(model, x, step);
  const double f = fd_scalar(model, x, 0.5 * step);
  return (4.0 * f - c) / 3.0;
}

double fd_step(double r) {
  return std::min(r / 4.0, std::max(1e-7, 1e-2 * r));
}

double warped_scalar(const ModelMetric& model, const ChartPoint& x) {
  const double r = x.x[0];
  if (model.preset() == Preset::AFSchwarzschildCap)
    return model.baseline_scalar(r);
  const DiagWarpTerms t = model.warp_terms(r, x.x[2]);
  const double sum = t.beta1_plus_gamma1 + t.beta * t.beta + t.gamma * t.gamma +
                     t.beta * t.gamma + 2.0 * t.beta * t.w1 +
                     2.0 * t.gamma * t.w2 + t.beta * t.w2 + t.gamma * t.w1 -
                     t.a1 * (t.beta + t.gamma + t.w1 + t.w2) + t.kbase;
  return -2.0 * sum / t.e2a;
}

double mean_curvature_prime(const ModelMetric& model, double r, double sigma) {
  if (!(r > 0)) throw std::domain_error("mean_curvature_prime: r must be > 0");
  const double Hb = model.baseline_mean_curvature(r);
  const auto& prof = model.profile();
  if (!prof) return Hb;
  const double pu = prof->consts().p() * prof->u(sigma, r);
  return std::exp(pu) * (Hb + prof->h_r(r) / prof->h(r));
}

namespace {

// extrinsic closed forms for the diagonal presets: H, |A|^2, normal
// derivative of H at the r-tube
void extrinsic_terms(const ModelMetric& model, double r, double sigma,
                     double* H, double* A2, double* dHdn) {
  if (model.preset() == Preset::AFSchwarzschildCap) {
    const double m = model.mass();
    const double V = vm_eval(m, r, 0);
    const double Vp = vm_eval(m, r, 1);
    const double sV = std::sqrt(V);
    *H = 2.0 * sV / r;
    *A2 = 2.0 * V / (r * r);
    // dH/dr = Vp/(sV r) - 2 sV / r^2 ; normal derivative scales by sV
    *dHdn = sV * (Vp / (sV * r) - 2.0 * sV / (r * r));
    return;
  }
  const DiagWarpTerms t = model.warp_terms(r, sigma);
  const double ea = std::sqrt(t.e2a);  // e^{a}
  const double b1 = t.beta + t.w1;
  const double c1 = t.gamma + t.w2;
  *H = (b1 + c1) / ea;
  *A2 = (b1 * b1 + c1 * c1) / t.e2a;
  // dH/dn = e^{-a} d_r [e^{-a} (b' + c')] = e^{-2a}[(b''+c'') - a'(b'+c')]
  // with b'' + c'' = beta1_plus_gamma1 + (w1' + w2'); recover the base second
  // derivatives from kbase: w1' + w2' = kbase - w1^2 - w2^2 - w1 w2
  const double base2 = t.kbase - t.w1 * t.w1 - t.w2 * t.w2 - t.w1 * t.w2;
  const double bpp_cpp = t.beta1_plus_gamma1 + base2;
  *dHdn = (bpp_cpp - t.a1 * (b1 + c1)) / t.e2a;
}

}  // namespace

double gauss_consistency(const ModelMetric& model, double r, double sigma,
                         double step) {
  ChartPoint center;
  center.x = {r, 1.0, sigma};
  if (model.preset() == Preset::AFSchwarzschildCap) center.x[1] = 1.5707963268;
  const double lhs = fd_scalar(model, center, step);

  // intrinsic scalar curvature of the slice by a 2-dimensional fd oracle
  const MetricFn slice = [&model, r](const double* p, double* g) {
    ChartPoint q;
    q.x = {r, p[0], p[1]};
    const Mat3 mg = model.metric_at(q);
    g[0] = mg(1, 1);
    g[1] = mg(1, 2);
    g[2] = mg(2, 1);
    g[3] = mg(2, 2);
  };
  const double y[2] = {center.x[1], center.x[2]};
  const double Rr = fd_scalar_generic(slice, y, step, 2);

  double H, A2, dHdn;
  extrinsic_terms(model, r, sigma, &H, &A2, &dHdn);
  const double rhs = Rr - (H * H + A2 + 2.0 * dHdn);
  return std::fabs(lhs - rhs);
}

JacobiSolution jacobi_solve(const std::function<double(double)>& K,
                            double r_max, int steps) {
  if (steps < 16) throw std::invalid_argument("jacobi_solve: steps >= 16");
  if (!(r_max > 0)) throw std::invalid_argument("jacobi_solve: r_max > 0");
  JacobiSolution sol;
  sol.grid.resize(steps + 1);
  sol.h_values.resize(steps + 1);
  sol.hr_values.resize(steps + 1);
  const double dt = r_max / steps;
  double h = 0.0, hr = 1.0, r = 0.0;
  sol.grid[0] = 0.0;
  sol.h_values[0] = 0.0;
  sol.hr_values[0] = 1.0;
  const auto f = [&K](double rr, double hh) { return -K(rr) * hh; };
  for (int k = 0; k < steps; ++k) {
    const double k1h = hr, k1v = f(r, h);
    const double k2h = hr + 0.5 * dt * k1v, k2v = f(r + 0.5 * dt, h + 0.5 * dt * k1h);
    const double k3h = hr + 0.5 * dt * k2v, k3v = f(r + 0.5 * dt, h + 0.5 * dt * k2h);
    const double k4h = hr + dt * k3v, k4v = f(r + dt, h + dt * k3h);
    h += dt / 6.0 * (k1h + 2.0 * k2h + 2.0 * k3h + k4h);
    hr += dt / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    r = (k + 1) * dt;
    sol.grid[k + 1] = r;
    sol.h_values[k + 1] = h;
    sol.hr_values[k + 1] = hr;
  }
  return sol;
}

double jacobi_quartic_coefficient(const JacobiSolution& sol, double r_fit) {
  // least-squares line v = a + b r through the nodes with 0 < r <= r_fit;
  // v = (h^2 - r^2)/r^4 and the intercept a estimates the limit at r = 0
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  long n = 0;
  for (size_t k = 1; k < sol.grid.size(); ++k) {
    const double r = sol.grid[k];
    if (r > r_fit) break;
    const double E = sol.h_values[k] * sol.h_values[k];
    const double v = (E - r * r) / (r * r * r * r);
    sx += r;
    sy += v;
    sxx += r * r;
    sxy += r * v;
    ++n;
  }
  if (n < 4)
    throw std::invalid_argument("jacobi_quartic_coefficient: too few nodes");
  const double denom = n * sxx - sx * sx;
  return (sy * sxx - sx * sxy) / denom;
}

}  // namespace drawstring

#include "drawstring/pulled_metric.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace drawstring {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct Adjacency {
  std::vector<int> head;
  std::vector<int> next;
  std::vector<uint32_t> to;
  std::vector<double> w;

  explicit Adjacency(size_t n, const std::vector<PulledSpace::Edge>& edges)
      : head(n, -1) {
    next.reserve(edges.size() * 2);
    to.reserve(edges.size() * 2);
    w.reserve(edges.size() * 2);
    for (const auto& e : edges) {
      add(e.a, e.b, e.weight);
      add(e.b, e.a, e.weight);
    }
  }
  void add(uint32_t a, uint32_t b, double weight) {
    to.push_back(b);
    w.push_back(weight);
    next.push_back(head[a]);
    head[a] = static_cast<int>(to.size()) - 1;
  }
};

double dijkstra(size_t n, const Adjacency& adj, uint32_t src, uint32_t dst) {
  std::vector<double> dist(n, kInf);
  using Item = std::pair<double, uint32_t>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  dist[src] = 0.0;
  pq.push({0.0, src});
  while (!pq.empty()) {
    const auto [d, v] = pq.top();
    pq.pop();
    if (d > dist[v]) continue;
    if (v == dst) return d;
    for (int e = adj.head[v]; e != -1; e = adj.next[e]) {
      const double nd = d + adj.w[e];
      if (nd < dist[adj.to[e]]) {
        dist[adj.to[e]] = nd;
        pq.push({nd, adj.to[e]});
      }
    }
  }
  return dist[dst];
}

}  // namespace

void PulledSpace::set_k(const std::vector<uint32_t>& nodes) {
  in_k.assign(coords.size(), 0);
  for (uint32_t v : nodes) in_k.at(v) = 1;
}

bool PulledSpace::has_k() const {
  for (uint8_t f : in_k)
    if (f) return true;
  return false;
}

uint32_t PulledSpace::nearest_node(const std::array<double, 3>& p) const {
  uint32_t best = 0;
  double best_d = kInf;
  for (size_t i = 0; i < coords.size(); ++i) {
    double d = 0;
    for (int k = 0; k < 3; ++k)
      d += (coords[i][k] - p[k]) * (coords[i][k] - p[k]);
    if (d < best_d) {
      best_d = d;
      best = static_cast<uint32_t>(i);
    }
  }
  return best;
}

namespace {

PulledSpace discretize_square(int resolution) {
  PulledSpace sp;
  const int n = resolution + 1;
  const double h = 1.0 / resolution;
  sp.coords.reserve(n * n);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      sp.coords.push_back({i * h, j * h, 0.0});
  const auto id = [n](int i, int j) { return static_cast<uint32_t>(i * n + j); };
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      if (i + 1 < n) sp.edges.push_back({id(i, j), id(i + 1, j), h});
      if (j + 1 < n) sp.edges.push_back({id(i, j), id(i, j + 1), h});
      const double hd = h * std::sqrt(2.0);
      if (i + 1 < n && j + 1 < n)
        sp.edges.push_back({id(i, j), id(i + 1, j + 1), hd});
      if (i + 1 < n && j > 0)
        sp.edges.push_back({id(i, j), id(i + 1, j - 1), hd});
    }
  sp.mesh = h * std::sqrt(2.0);
  return sp;
}

// Polar tube lattice: axis nodes (r = 0) per t-slice plus (r_i, theta_j, t_k)
// rings. In-slice 8-neighbor stencil (radial, angular, diagonals), axial
// edges between consecutive slices, periodic in theta and t.
PulledSpace discretize_tube(const ModelMetric& model, int resolution,
                            double r_top) {
  const bool flat = model.preset() == Preset::FlatBaseline ||
                    model.preset() == Preset::FlatTorusDrawstring;
  const double t_len = flat ? model.t_period() : 6.283185307179586;
  const double two_pi = 6.283185307179586476925286766559;

  const int nr = resolution;
  const int nth = std::max(8, resolution / 4);
  const int nt = std::max(8, resolution / 4);
  const double dr = r_top / nr;
  const double dth = two_pi / nth;
  const double dt = t_len / nt;

  if (model.profile()) {
    const double r1 = model.profile()->r1();
    if (r1 / dr < 4.0)
      throw std::invalid_argument(
          "discretize: resolution too coarse, fewer than 4 nodes across r1");
  }

  PulledSpace sp;
  // axis nodes first (index k in [0, nt)), then rings in (i, j, k) order
  const auto id = [&](int i, int j, int k) {
    return static_cast<uint32_t>(nt + (i * nth + j) * nt + k);
  };
  sp.coords.resize(nt + static_cast<size_t>(nr) * nth * nt);
  for (int k = 0; k < nt; ++k) sp.coords[k] = {0.0, 0.0, k * dt};
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nth; ++j)
      for (int k = 0; k < nt; ++k)
        sp.coords[id(i, j, k)] = {(i + 1) * dr, j * dth, k * dt};

  const auto metric_len = [&](const std::array<double, 3>& a,
                              const std::array<double, 3>& b) {
    double d1 = b[1] - a[1];
    if (d1 > two_pi / 2) d1 -= two_pi;
    if (d1 < -two_pi / 2) d1 += two_pi;
    double d2 = b[2] - a[2];
    if (d2 > t_len / 2) d2 -= t_len;
    if (d2 < -t_len / 2) d2 += t_len;
    const double d0 = b[0] - a[0];
    ChartPoint mid{{0.5 * (a[0] + b[0]), a[1] + 0.5 * d1, a[2] + 0.5 * d2}};
    const Mat3 g = model.metric_at(mid);
    return std::sqrt(g(0, 0) * d0 * d0 + g(1, 1) * d1 * d1 +
                     g(2, 2) * d2 * d2);
  };
  const auto add = [&](uint32_t a, uint32_t b) {
    const double w = metric_len(sp.coords[a], sp.coords[b]);
    sp.edges.push_back({a, b, w});
    sp.mesh = std::max(sp.mesh, w);
  };

  // axis: axial edges use the t-coefficient at r = 0 (e^{2u(0,t)} times the
  // base value, which both tube presets have equal to 1 at the axis)
  for (int k = 0; k < nt; ++k) {
    const double tmid = (k + 0.5) * dt;
    const double u0 = model.u_at(tmid, 0.0);
    const double w = std::exp(u0) * dt;
    sp.edges.push_back({static_cast<uint32_t>(k),
                        static_cast<uint32_t>((k + 1) % nt), w});
    sp.mesh = std::max(sp.mesh, w);
    // axis to first ring: radial segment
    for (int j = 0; j < nth; ++j) {
      ChartPoint mid{{0.5 * dr, j * dth, k * dt}};
      const Mat3 g = model.metric_at(mid);
      const double wr = std::sqrt(g(0, 0)) * dr;
      sp.edges.push_back({static_cast<uint32_t>(k), id(0, j, k), wr});
      sp.mesh = std::max(sp.mesh, wr);
    }
  }
  for (int i = 0; i < nr; ++i)
    for (int j = 0; j < nth; ++j)
      for (int k = 0; k < nt; ++k) {
        const uint32_t v = id(i, j, k);
        add(v, id(i, (j + 1) % nth, k));          // angular
        if (i + 1 < nr) {
          add(v, id(i + 1, j, k));                // radial
          add(v, id(i + 1, (j + 1) % nth, k));    // in-slice diagonals
          add(v, id(i + 1, (j - 1 + nth) % nth, k));
        }
        add(v, id(i, j, (k + 1) % nt));           // axial
      }
  return sp;
}

}  // namespace

PulledSpace discretize(const ModelMetric& model, int resolution, double r_top) {
  if (resolution < 8)
    throw std::invalid_argument("discretize: resolution must be >= 8");
  switch (model.preset()) {
    case Preset::FlatBaseline:
      if (r_top <= 0) return discretize_square(resolution);
      return discretize_tube(model, resolution, r_top);
    case Preset::FlatTorusDrawstring:
    case Preset::RoundS3Baseline:
    case Preset::RoundS3Drawstring: {
      double top = r_top;
      if (top <= 0) {
        top = model.profile() ? model.profile()->consts().r_I
                              : std::min(1.2, model.r_max() * 0.76);
      }
      return discretize_tube(model, resolution, top);
    }
    default:
      throw std::invalid_argument(
          "discretize: unsupported preset for discretization");
  }
}

PulledSpace interval_space(double length, double step) {
  if (!(step > 0) || !(length > 0) || step > length)
    throw std::invalid_argument("interval_space: bad parameters");
  PulledSpace sp;
  const int n = static_cast<int>(std::lround(length / step));
  for (int i = 0; i <= n; ++i)
    sp.coords.push_back({length * i / n, 0.0, 0.0});
  for (int i = 0; i < n; ++i)
    sp.edges.push_back({static_cast<uint32_t>(i), static_cast<uint32_t>(i + 1),
                        length / n});
  sp.mesh = length / n;
  return sp;
}

double geodesic_distance(const PulledSpace& space, uint32_t a, uint32_t b) {
  if (a >= space.size() || b >= space.size())
    throw std::invalid_argument("geodesic_distance: node out of range");
  const Adjacency adj(space.size(), space.edges);
  const double d = dijkstra(space.size(), adj, a, b);
  if (!std::isfinite(d))
    throw std::runtime_error("geodesic_distance: nodes are not connected");
  return d;
}

double pulled_distance(const PulledSpace& space, uint32_t a, uint32_t b) {
  return pulled_distance(space, a, b, space.c);
}

double pulled_distance(const PulledSpace& space, uint32_t a, uint32_t b,
                       double c) {
  if (a >= space.size() || b >= space.size())
    throw std::invalid_argument("pulled_distance: node out of range");
  if (!space.has_k())
    throw std::invalid_argument("pulled_distance: K is empty");
  if (c < 0) throw std::invalid_argument("pulled_distance: c must be >= 0");

  if (c == kPullInfinity) {
    // contract K to one node
    std::vector<uint32_t> remap(space.size());
    uint32_t next = 1;  // node 0 is the contracted K
    for (size_t i = 0; i < space.size(); ++i)
      remap[i] = space.in_k[i] ? 0 : next++;
    std::vector<PulledSpace::Edge> edges;
    edges.reserve(space.edges.size());
    for (const auto& e : space.edges) {
      const uint32_t u = remap[e.a], v = remap[e.b];
      if (u == v) continue;
      edges.push_back({u, v, e.weight});
    }
    const Adjacency adj(next, edges);
    const double d = dijkstra(next, adj, remap[a], remap[b]);
    if (!std::isfinite(d))
      throw std::runtime_error("pulled_distance: nodes are not connected");
    return d;
  }

  const double scale = std::exp(-c);
  std::vector<PulledSpace::Edge> edges = space.edges;
  for (auto& e : edges)
    if (space.in_k[e.a] && space.in_k[e.b]) e.weight *= scale;
  const Adjacency adj(space.size(), edges);
  const double d = dijkstra(space.size(), adj, a, b);
  if (!std::isfinite(d))
    throw std::runtime_error("pulled_distance: nodes are not connected");
  return d;
}

std::vector<StudyRow> convergence_study(
    const std::vector<ModelMetric>& models, double c,
    const std::vector<std::pair<std::array<double, 3>, std::array<double, 3>>>&
        sample_pairs,
    int resolution) {
  if (models.empty()) return {};
  // all models must share the chart; discretize each with the same lattice
  const double r_top = models.front().profile()
                           ? models.front().profile()->consts().r_I
                           : -1.0;
  for (const auto& m : models) {
    if (!m.profile())
      throw std::invalid_argument("convergence_study: drawstring presets only");
    if (m.profile()->consts().r_I != r_top)
      throw std::invalid_argument("convergence_study: charts do not match");
  }

  // pulled reference on the undeformed chart
  PulledSpace base = discretize(models.front().baseline(), resolution, r_top);
  std::vector<uint32_t> axis;
  for (uint32_t i = 0; i < base.size(); ++i)
    if (base.coords[i][0] == 0.0) axis.push_back(i);
  base.set_k(axis);

  std::vector<std::pair<uint32_t, uint32_t>> pairs;
  for (const auto& [pa, pb] : sample_pairs)
    pairs.push_back({base.nearest_node(pa), base.nearest_node(pb)});

  std::vector<double> ref;
  for (auto [a, b] : pairs) ref.push_back(pulled_distance(base, a, b, c));

  std::vector<StudyRow> rows;
  for (const auto& m : models) {
    const PulledSpace gs = discretize(m, resolution, r_top);
    double sup = 0.0;
    for (size_t q = 0; q < pairs.size(); ++q) {
      const double dg = geodesic_distance(gs, pairs[q].first, pairs[q].second);
      sup = std::max(sup, std::fabs(dg - ref[q]));
    }
    rows.push_back({m.profile()->eps(), sup});
  }
  return rows;
}

LipschitzCheck lipschitz_cpull_check(const PulledSpace& space,
                                     const std::vector<uint32_t>& A,
                                     const std::vector<uint32_t>& B,
                                     const std::vector<uint32_t>& f, double L,
                                     double c) {
  if (f.size() != space.size())
    throw std::invalid_argument("lipschitz_cpull_check: f must map all nodes");
  std::vector<uint8_t> inA(space.size(), 0), inB(space.size(), 0);
  for (uint32_t v : A) inA.at(v) = 1;
  for (uint32_t v : B) inB.at(v) = 1;
  for (uint32_t v = 0; v < space.size(); ++v) {
    if (inA[v] && !inB[f[v]])
      throw std::invalid_argument("lipschitz_cpull_check: f(A) not inside B");
    if (inB[v] && f[v] != v)
      throw std::invalid_argument("lipschitz_cpull_check: f not identity on B");
  }
  PulledSpace sA = space;
  sA.set_k(A);
  PulledSpace sB = space;
  sB.set_k(B);

  LipschitzCheck out;
  out.ok = true;
  out.worst_ratio = 0.0;
  for (uint32_t x = 0; x < space.size(); ++x)
    for (uint32_t y = x + 1; y < space.size(); ++y) {
      const double da = pulled_distance(sA, x, y, c);
      const double db = pulled_distance(sB, f[x], f[y], c);
      if (da == 0.0) continue;
      const double ratio = db / (L * da);
      if (ratio > out.worst_ratio) {
        out.worst_ratio = ratio;
        out.worst_x = x;
        out.worst_y = y;
      }
    }
  out.ok = out.worst_ratio <= 1.0 + 1e-9;
  return out;
}

}  // namespace drawstring

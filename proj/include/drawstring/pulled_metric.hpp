#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "drawstring/models.hpp"

namespace drawstring {

constexpr double kPullInfinity = std::numeric_limits<double>::infinity();

// Finite weighted graph discretizing a chart, with a marked subset K and a
// pull exponent c. Distances inside K are discounted by e^{-c}; c = inf
// contracts K to a point.
struct PulledSpace {
  struct Edge {
    uint32_t a, b;
    double weight;
  };
  std::vector<std::array<double, 3>> coords;
  std::vector<Edge> edges;
  std::vector<uint8_t> in_k;  // empty or one flag per node
  double c = 0.0;
  double mesh = 0.0;  // max edge weight of the base graph

  size_t size() const { return coords.size(); }
  void set_k(const std::vector<uint32_t>& nodes);
  bool has_k() const;
  uint32_t nearest_node(const std::array<double, 3>& p) const;
};

// Grid graph on the model's chart. Flat baseline uses the unit square with
// an 8-neighbor stencil; tube presets use a polar (r, theta, t) lattice with
// 8-neighbor in-slice stencil, axial edges, axis nodes at r = 0, and
// periodic identifications. Edge weight = chart segment length under the
// midpoint metric. K is not set.
PulledSpace discretize(const ModelMetric& model, int resolution,
                       double r_top = -1.0);

// 1-dimensional path graph on [0, length] with the given step (unit metric).
PulledSpace interval_space(double length, double step);

// exact shortest path in the weighted graph
double geodesic_distance(const PulledSpace& space, uint32_t a, uint32_t b);

// shortest path with K-internal edges scaled by e^{-c} (space.c by default);
// c = kPullInfinity contracts K to a single node.
double pulled_distance(const PulledSpace& space, uint32_t a, uint32_t b);
double pulled_distance(const PulledSpace& space, uint32_t a, uint32_t b,
                       double c);

struct StudyRow {
  double eps;
  double sup_deviation;
};

// For drawstring presets sharing one chart: sup over sample pairs of
// |d_{g_i}(a, b) - d_c(a, b)| against the pulled baseline distance.
std::vector<StudyRow> convergence_study(
    const std::vector<ModelMetric>& models, double c,
    const std::vector<std::pair<std::array<double, 3>, std::array<double, 3>>>&
        sample_pairs,
    int resolution);

struct LipschitzCheck {
  bool ok = false;
  double worst_ratio = 0.0;
  uint32_t worst_x = 0, worst_y = 0;
};

// d_{c,B}(f(x), f(y)) <= L d_{c,A}(x, y) over all node pairs (A, B node
// sets, f a node map with f(A) subset B, f identity on B).
LipschitzCheck lipschitz_cpull_check(const PulledSpace& space,
                                     const std::vector<uint32_t>& A,
                                     const std::vector<uint32_t>& B,
                                     const std::vector<uint32_t>& f, double L,
                                     double c);

}  // namespace drawstring

// Independent reference implementations used to validate the library:
// dense-grid brute forces for both diameters, parallel/series closed forms,
// and deterministic random model corpora.
#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "mgs/graph.hpp"
#include "mgs/harmonic.hpp"
#include "mgs/linalg.hpp"

namespace oracles {

using namespace mgs;

/// Maximizes eval(x_t, y_s) over one edge pair by a dense grid (initial step
/// <= min_len/divisor) followed by repeated zooming around the best cell.
template <class F>
double max_over_edge_pair(const MetricGraphModel& m, EdgeId e1, EdgeId e2, F&& eval,
                          int divisor, int rounds = 10) {
  double lmin = m.edges().front().length;
  for (const EdgeSpec& e : m.edges()) lmin = std::min(lmin, e.length);
  const double l1 = m.edge(e1).length, l2 = m.edge(e2).length;
  double t_lo = 0, t_hi = l1, s_lo = 0, s_hi = l2;
  int n1 = std::max(16, static_cast<int>(std::ceil(l1 / (lmin / divisor))));
  int n2 = std::max(16, static_cast<int>(std::ceil(l2 / (lmin / divisor))));
  double best = -1, bt = 0, bs = 0;
  for (int round = 0; round < rounds; ++round) {
    for (int i = 0; i <= n1; ++i) {
      double t = std::min(l1, t_lo + (t_hi - t_lo) * i / n1);
      for (int j = 0; j <= n2; ++j) {
        double s = std::min(l2, s_lo + (s_hi - s_lo) * j / n2);
        double v = eval(GraphPoint::on_edge(e1, t), GraphPoint::on_edge(e2, s));
        if (v > best) {
          best = v;
          bt = t;
          bs = s;
        }
      }
    }
    double dt = (t_hi - t_lo) / n1, ds = (s_hi - s_lo) / n2;
    t_lo = std::max(0.0, bt - dt);
    t_hi = std::min(l1, bt + dt);
    s_lo = std::max(0.0, bs - ds);
    s_hi = std::min(l2, bs + ds);
    n1 = n2 = 16;
  }
  return best;
}

/// Maximum of a two-point function over G x G by per-edge-pair zoomed grids.
template <class F>
double brute_max(const MetricGraphModel& m, F&& eval, int divisor = 64, int rounds = 10) {
  double best = -1;
  const auto& es = m.edges();
  for (size_t i = 0; i < es.size(); ++i)
    for (size_t j = i; j < es.size(); ++j)
      best = std::max(best, max_over_edge_pair(m, es[i].id, es[j].id, eval, divisor, rounds));
  return best;
}

/// Batched effective-resistance reference: subdivides at all sample points at
/// once, inverts the grounded Laplacian directly, and reads r off the inverse.
/// Deliberately bypasses the library's patch/diameter machinery.
inline std::vector<double> resistance_grid(const MetricGraphModel& m, EdgeId e1,
                                           const std::vector<double>& ts, EdgeId e2,
                                           const std::vector<double>& ss) {
  // snap samples sitting ulps away from an edge end onto the end itself:
  // otherwise the subdivision gains a ~1e-16 edge whose huge conductance
  // wrecks the factorization
  auto snapped = [&](EdgeId e, double t) {
    double l = m.edge(e).length;
    if (t < 1e-9 * l) t = 0;
    if (t > (1 - 1e-9) * l) t = l;
    return GraphPoint::on_edge(e, t);
  };
  std::vector<GraphPoint> pts;
  for (double t : ts) pts.push_back(snapped(e1, t));
  for (double s : ss) pts.push_back(snapped(e2, s));
  auto [ref, map] = m.subdivide_at(pts);
  Matrix lap = assemble_laplacian(ref).dense();
  int n = static_cast<int>(lap.rows());
  Matrix g = Matrix::Zero(n, n);  // grounded at dense index 0
  g.bottomRightCorner(n - 1, n - 1) =
      lap.bottomRightCorner(n - 1, n - 1).ldlt().solve(Matrix::Identity(n - 1, n - 1));
  std::vector<int> ti, si;
  for (const GraphPoint& p : pts) {
    GraphPoint q = ref.canonicalize(map(p));
    int idx = ref.vertex_index(q.vertex);
    (ti.size() < ts.size() ? ti : si).push_back(idx);
  }
  std::vector<double> out;
  out.reserve(ts.size() * ss.size());
  for (int a : ti)
    for (int b : si) out.push_back(g(a, a) + g(b, b) - 2 * g(a, b));
  return out;
}

/// max_over_edge_pair for expensive pairwise functions evaluated gridwise:
/// grid(e1, ts, e2, ss) returns values row-major over ts x ss.
template <class G>
double max_over_edge_pair_grid(const MetricGraphModel& m, EdgeId e1, EdgeId e2, G&& grid,
                               int divisor, int rounds) {
  double lmin = m.edges().front().length;
  for (const EdgeSpec& e : m.edges()) lmin = std::min(lmin, e.length);
  const double l1 = m.edge(e1).length, l2 = m.edge(e2).length;
  double t_lo = 0, t_hi = l1, s_lo = 0, s_hi = l2;
  int n1 = std::max(16, static_cast<int>(std::ceil(l1 / (lmin / divisor))));
  int n2 = std::max(16, static_cast<int>(std::ceil(l2 / (lmin / divisor))));
  double best = -1, bt = 0, bs = 0;
  for (int round = 0; round < rounds; ++round) {
    std::vector<double> ts(n1 + 1), ss(n2 + 1);
    for (int i = 0; i <= n1; ++i) ts[i] = std::min(l1, t_lo + (t_hi - t_lo) * i / n1);
    for (int j = 0; j <= n2; ++j) ss[j] = std::min(l2, s_lo + (s_hi - s_lo) * j / n2);
    std::vector<double> vals = grid(e1, ts, e2, ss);
    for (int i = 0; i <= n1; ++i)
      for (int j = 0; j <= n2; ++j) {
        double v = vals[static_cast<size_t>(i) * (n2 + 1) + j];
        if (v > best) {
          best = v;
          bt = ts[i];
          bs = ss[j];
        }
      }
    double dt = (t_hi - t_lo) / n1, ds = (s_hi - s_lo) / n2;
    t_lo = std::max(0.0, bt - dt);
    t_hi = std::min(l1, bt + dt);
    s_lo = std::max(0.0, bs - ds);
    s_hi = std::min(l2, bs + ds);
    n1 = n2 = 16;
  }
  return best;
}

/// Brute-force resistance diameter via the batched reference.
inline double brute_resistance_diameter(const MetricGraphModel& m, int divisor = 64,
                                        int rounds = 5) {
  double best = -1;
  auto grid = [&](EdgeId a, const std::vector<double>& ts, EdgeId b,
                  const std::vector<double>& ss) { return resistance_grid(m, a, ts, b, ss); };
  const auto& es = m.edges();
  for (size_t i = 0; i < es.size(); ++i)
    for (size_t j = i; j < es.size(); ++j)
      best = std::max(best, max_over_edge_pair_grid(m, es[i].id, es[j].id, grid, divisor, rounds));
  return best;
}

/// Random connected multigraph: a random spanning tree plus random extra
/// edges (possibly parallel or loops). Deterministic in the seed.
inline MetricGraphModel random_graph(std::uint64_t seed, int max_edges, double len_lo = 0.4,
                                     double len_hi = 1.6) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> len(len_lo, len_hi);
  std::uniform_int_distribution<int> edge_count(1, max_edges);
  int E = edge_count(rng);
  std::uniform_int_distribution<int> vertex_count(2, std::max(2, E));
  int V = std::min(vertex_count(rng), E + 1);

  std::vector<VertexId> vs;
  for (int i = 0; i < V; ++i) vs.push_back(i);
  std::vector<EdgeSpec> es;
  EdgeId id = 0;
  for (int v = 1; v < V; ++v) {
    std::uniform_int_distribution<int> parent(0, v - 1);
    es.push_back({id++, parent(rng), v, len(rng)});
  }
  std::uniform_int_distribution<int> any(0, V - 1);
  while (static_cast<int>(es.size()) < E) {
    int a = any(rng), b = any(rng);
    es.push_back({id++, a, b, len(rng)});
  }
  return MetricGraphModel::build(vs, es);
}

/// Random tree with lengths in [0.1, 2].
inline MetricGraphModel random_tree(std::uint64_t seed, int max_edges) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> len(0.1, 2.0);
  std::uniform_int_distribution<int> edge_count(1, max_edges);
  int E = edge_count(rng);
  std::vector<VertexId> vs;
  for (int i = 0; i <= E; ++i) vs.push_back(i);
  std::vector<EdgeSpec> es;
  for (int v = 1; v <= E; ++v) {
    std::uniform_int_distribution<int> parent(0, v - 1);
    es.push_back({v - 1, parent(rng), v, len(rng)});
  }
  return MetricGraphModel::build(vs, es);
}

/// Uniformly random point of the model.
inline GraphPoint random_point(std::mt19937_64& rng, const MetricGraphModel& m) {
  double L = m.total_length();
  std::uniform_real_distribution<double> pick(0.0, L);
  double pos = pick(rng);
  for (const EdgeSpec& e : m.edges()) {
    if (pos <= e.length) return m.canonicalize(GraphPoint::on_edge(e.id, pos));
    pos -= e.length;
  }
  return GraphPoint::at_vertex(m.vertices().front());
}

}  // namespace oracles

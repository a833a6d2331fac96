#include "mgs/resistance.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace mgs {

namespace {

// Shared-factorization resistance table: one grounded inverse serves every
// pair of points that were made vertices by the refinement.
struct RTable {
  MetricGraphModel refined;
  PointMap map;
  Matrix Minv;  // inverse of the Laplacian grounded at vertex index 0

  double entry(int i, int j) const {
    if (i == 0 || j == 0) return 0.0;
    return Minv(i - 1, j - 1);
  }

  int index_of(const GraphPoint& p) const {
    GraphPoint q = refined.canonicalize(map(p));
    return refined.vertex_index(q.vertex);
  }

  double r(const GraphPoint& a, const GraphPoint& b) const {
    int i = index_of(a), j = index_of(b);
    return entry(i, i) + entry(j, j) - 2 * entry(i, j);
  }
};

RTable make_table(const MetricGraphModel& model, std::span<const GraphPoint> points) {
  auto [refined, map] = model.subdivide_at(points);
  SymMatrix L = assemble_laplacian(refined);
  const int n = L.size();
  Matrix A(n - 1, n - 1);
  for (int i = 1; i < n; ++i)
    for (int j = 1; j < n; ++j) A(i - 1, j - 1) = L(i, j);
  Eigen::LLT<Matrix> llt(A);
  if (llt.info() != Eigen::Success)
    throw SingularInteriorBlock("grounded Laplacian is not positive definite");
  Matrix Minv = llt.solve(Matrix::Identity(n - 1, n - 1));
  return {std::move(refined), std::move(map), std::move(Minv)};
}

}  // namespace

// Interior points never enter the linear algebra: splitting an edge at x and
// eliminating x again leaves the vertex network unchanged, turning the unit
// current at x into currents 1-a at u and a at v (a = t/l) plus the local
// term t(l-t)/l. This keeps r exact even for points arbitrarily close to a
// vertex, where a subdivided system would be catastrophically conditioned.
double resistance(const MetricGraphModel& model, const GraphPoint& x, const GraphPoint& y) {
  GraphPoint cx = model.canonicalize(x), cy = model.canonicalize(y);
  if (cx == cy) return 0.0;

  const int n = static_cast<int>(model.vertices().size());
  Matrix A = assemble_laplacian(model).dense().bottomRightCorner(n - 1, n - 1);
  Eigen::LLT<Matrix> llt(A);
  if (llt.info() != Eigen::Success)
    throw SingularInteriorBlock("grounded Laplacian is not positive definite");
  // quadratic form w^T G w on the Green matrix grounded at dense index 0
  auto green_quad = [&](const Vector& w) {
    Vector wg = w.tail(n - 1);
    return wg.dot(llt.solve(wg).eval());
  };

  if (!cx.is_vertex() && !cy.is_vertex() && cx.edge == cy.edge) {
    // same edge: a cycle of length l + R_ext through the rest of the network
    const EdgeSpec& e = model.edge(cx.edge);
    double d = std::abs(cx.offset - cy.offset);
    Vector b = Vector::Zero(n);
    b[model.vertex_index(e.u)] += 1.0;
    b[model.vertex_index(e.v)] -= 1.0;
    double ruv = green_quad(b);
    double inv = 1.0 / ruv - 1.0 / e.length;  // conductance of the external routes
    if (!(inv > 0.0) || !std::isfinite(inv)) return d;  // bridge edge
    double R = e.length + 1.0 / inv;
    return d * (R - d) / R;
  }

  double local = 0.0;
  auto weight = [&](const GraphPoint& p, double sign) -> Vector {
    Vector w = Vector::Zero(n);
    if (p.is_vertex()) {
      w[model.vertex_index(p.vertex)] = sign;
      return w;
    }
    const EdgeSpec& e = model.edge(p.edge);
    double a = p.offset / e.length;
    w[model.vertex_index(e.u)] = sign * (1.0 - a);
    w[model.vertex_index(e.v)] = sign * a;
    local += p.offset * (e.length - p.offset) / e.length;
    return w;
  };
  Vector w = weight(cx, 1.0) + weight(cy, -1.0);
  return green_quad(w) + local;
}

PiecewiseLinearFunction f_xy(const MetricGraphModel& model, const GraphPoint& x,
                             const GraphPoint& y) {
  GraphPoint cx = model.canonicalize(x), cy = model.canonicalize(y);
  if (cx == cy) throw CoincidentPoints("f_xy requires two distinct points");
  GraphPoint pts[] = {cx, cy};
  auto [refined, map] = model.subdivide_at(pts);
  VertexId vx = refined.canonicalize(map(cx)).vertex;
  VertexId vy = refined.canonicalize(map(cy)).vertex;
  return harmonic_extension(refined, {{vx, 1.0}, {vy, -1.0}});
}

namespace {

struct Sample {
  double u, v;  // normalized offsets in [0,1]
};

// Least-squares fit of a full bivariate quadratic in normalized coordinates.
QuadraticPatch fit_from_samples(const MetricGraphModel& model, EdgeId e1, EdgeId e2,
                                const std::vector<Sample>& fit,
                                const std::vector<Sample>& holdout) {
  const double l1 = model.edge(e1).length, l2 = model.edge(e2).length;
  auto point1 = [&](double u) { return GraphPoint::on_edge(e1, u * l1); };
  auto point2 = [&](double v) { return GraphPoint::on_edge(e2, v * l2); };

  std::vector<GraphPoint> pts;
  for (const Sample& s : fit) {
    pts.push_back(point1(s.u));
    pts.push_back(point2(s.v));
  }
  for (const Sample& s : holdout) {
    pts.push_back(point1(s.u));
    pts.push_back(point2(s.v));
  }
  RTable table = make_table(model, pts);

  const int m = static_cast<int>(fit.size());
  Matrix A(m, 6);
  Vector b(m);
  double rmax = 0;
  for (int i = 0; i < m; ++i) {
    double u = fit[i].u, v = fit[i].v;
    A.row(i) << 1, u, v, u * u, u * v, v * v;
    b[i] = table.r(point1(u), point2(v));
    rmax = std::max(rmax, std::abs(b[i]));
  }
  Vector a = A.colPivHouseholderQr().solve(b);

  double worst = 0;
  for (const Sample& s : holdout) {
    double exact = table.r(point1(s.u), point2(s.v));
    rmax = std::max(rmax, std::abs(exact));
    double fitval = a[0] + a[1] * s.u + a[2] * s.v + a[3] * s.u * s.u + a[4] * s.u * s.v +
                    a[5] * s.v * s.v;
    worst = std::max(worst, std::abs(fitval - exact));
  }

  QuadraticPatch p;
  p.e1 = e1;
  p.e2 = e2;
  p.c00 = a[0];
  p.c10 = a[1] / l1;
  p.c01 = a[2] / l2;
  p.c20 = a[3] / (l1 * l1);
  p.c11 = a[4] / (l1 * l2);
  p.c02 = a[5] / (l2 * l2);
  p.residual = worst;
  p.quadratic = worst <= 1e-7 * std::max(rmax, 1e-300);
  return p;
}

}  // namespace

QuadraticPatch fit_patch(const MetricGraphModel& model, EdgeId e1, EdgeId e2) {
  if (e1 != e2) {
    std::vector<Sample> fit, holdout;
    for (double u : {0.25, 0.5, 0.75})
      for (double v : {0.25, 0.5, 0.75}) fit.push_back({u, v});
    holdout = {{0.125, 0.125}, {0.125, 0.625}, {0.625, 0.125}, {0.875, 0.875}};
    return fit_from_samples(model, e1, e2, fit, holdout);
  }
  // same edge: fit on the open triangle u < v, where r has no kink
  std::vector<Sample> fit = {{0.125, 0.375}, {0.125, 0.625}, {0.125, 0.875},
                             {0.375, 0.625}, {0.375, 0.875}, {0.625, 0.875},
                             {0.25, 0.5},    {0.5, 0.75},    {0.25, 0.75}};
  std::vector<Sample> holdout = {{0.125, 0.25}, {0.375, 0.5}, {0.625, 0.75}, {0.25, 0.875}};
  return fit_from_samples(model, e1, e2, fit, holdout);
}

namespace {

struct BestPair {
  double value = -1;
  GraphPoint x, y;
  bool set = false;
};

// Snaps fit noise: a candidate within 1e-9 * l of an edge end is the end
// itself (critical points that mathematically sit on the boundary).
GraphPoint snap_to_boundary(const MetricGraphModel& model, GraphPoint p) {
  if (p.is_vertex()) return p;
  double l = model.edge(p.edge).length;
  if (p.offset < 1e-9 * l) p.offset = 0.0;
  if (p.offset > (1 - 1e-9) * l) p.offset = l;
  return p;
}

void record(const MetricGraphModel& model, BestPair& best, double v, GraphPoint x,
            GraphPoint y) {
  x = model.canonicalize(snap_to_boundary(model, x));
  y = model.canonicalize(snap_to_boundary(model, y));
  auto kx = model.sort_key(x), ky = model.sort_key(y);
  if (ky < kx) {
    std::swap(x, y);
    std::swap(kx, ky);
  }
  if (!best.set || v > best.value + 1e-12 * std::max(1.0, best.value)) {
    best = {v, x, y, true};
  } else if (std::abs(v - best.value) <= 1e-12 * std::max(1.0, best.value)) {
    auto cur = std::make_pair(model.sort_key(best.x), model.sort_key(best.y));
    if (std::make_pair(kx, ky) < cur) best = {best.value, x, y, true};
  }
}

// Exact maximum of a bivariate quadratic over [0,l1] x [0,l2], or over the
// triangle {t <= s} when `triangle` is set.
void maximize_patch(const MetricGraphModel& model, const QuadraticPatch& p, bool triangle,
                    BestPair& best) {
  const double l1 = model.edge(p.e1).length, l2 = model.edge(p.e2).length;
  std::vector<std::pair<double, double>> cands;

  auto clamp1 = [](double t, double lo, double hi) { return std::clamp(t, lo, hi); };

  // interior critical point
  double det = 4 * p.c20 * p.c02 - p.c11 * p.c11;
  if (std::abs(det) > 1e-300) {
    double t = (-2 * p.c02 * p.c10 + p.c11 * p.c01) / det;
    double s = (-2 * p.c20 * p.c01 + p.c11 * p.c10) / det;
    cands.push_back({t, s});
  }
  // boundary t = const
  auto along_s = [&](double t) {
    if (std::abs(p.c02) > 1e-300) cands.push_back({t, -(p.c01 + p.c11 * t) / (2 * p.c02)});
    cands.push_back({t, 0});
    cands.push_back({t, l2});
  };
  auto along_t = [&](double s) {
    if (std::abs(p.c20) > 1e-300) cands.push_back({-(p.c10 + p.c11 * s) / (2 * p.c20), s});
    cands.push_back({0, s});
    cands.push_back({l1, s});
  };
  along_s(0);
  along_s(l1);
  along_t(0);
  along_t(l2);
  if (triangle) {
    // diagonal t = s: 1-D quadratic in t
    double a2 = p.c20 + p.c11 + p.c02, a1 = p.c10 + p.c01;
    if (std::abs(a2) > 1e-300) {
      double t = -a1 / (2 * a2);
      cands.push_back({t, t});
    }
    cands.push_back({0, 0});
    cands.push_back({l1, l1});
  }

  for (auto [t, s] : cands) {
    t = clamp1(t, 0, l1);
    s = clamp1(s, 0, l2);
    if (triangle && t > s) continue;
    double v = p.eval(t, s);
    record(model, best, v, GraphPoint::on_edge(p.e1, t), GraphPoint::on_edge(p.e2, s));
  }
}

// Fallback when a patch fails validation: dense grid with local refinement.
void maximize_grid(const MetricGraphModel& model, EdgeId e1, EdgeId e2, bool triangle,
                   BestPair& best) {
  const double l1 = model.edge(e1).length, l2 = model.edge(e2).length;
  double t_lo = 0, t_hi = l1, s_lo = 0, s_hi = l2;
  const int n = 256;
  double bt = 0, bs = 0, bv = -1;
  for (int round = 0; round < 4; ++round) {
    std::vector<GraphPoint> pts;
    std::vector<double> ts(n + 1), ss(n + 1);
    for (int i = 0; i <= n; ++i) {
      ts[i] = t_lo + (t_hi - t_lo) * i / n;
      ss[i] = s_lo + (s_hi - s_lo) * i / n;
      pts.push_back(GraphPoint::on_edge(e1, ts[i]));
      pts.push_back(GraphPoint::on_edge(e2, ss[i]));
    }
    RTable table = make_table(model, pts);
    for (int i = 0; i <= n; ++i) {
      for (int j = 0; j <= n; ++j) {
        if (triangle && ts[i] > ss[j]) continue;
        double v = table.r(GraphPoint::on_edge(e1, ts[i]), GraphPoint::on_edge(e2, ss[j]));
        if (v > bv) {
          bv = v;
          bt = ts[i];
          bs = ss[j];
        }
      }
    }
    double dt = (t_hi - t_lo) / n, ds = (s_hi - s_lo) / n;
    t_lo = std::max(0.0, bt - dt);
    t_hi = std::min(l1, bt + dt);
    s_lo = std::max(0.0, bs - ds);
    s_hi = std::min(l2, bs + ds);
  }
  record(model, best, bv, GraphPoint::on_edge(e1, bt), GraphPoint::on_edge(e2, bs));
}

}  // namespace

std::tuple<double, GraphPoint, GraphPoint> resistance_diameter(const MetricGraphModel& model) {
  BestPair best;
  const auto& edges = model.edges();
  for (size_t i = 0; i < edges.size(); ++i) {
    for (size_t j = i; j < edges.size(); ++j) {
      EdgeId e1 = edges[i].id, e2 = edges[j].id;
      bool triangle = (e1 == e2);
      QuadraticPatch p = fit_patch(model, e1, e2);
      if (p.quadratic)
        maximize_patch(model, p, triangle, best);
      else
        maximize_grid(model, e1, e2, triangle, best);
    }
  }
  return {best.value, best.x, best.y};
}

}  // namespace mgs

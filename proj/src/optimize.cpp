#include "mgs/optimize.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <thread>

namespace mgs {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

OptimalFirstEigenvalue lambda1_min(const MetricGraphModel& model) {
  auto [diam, x, y] = resistance_diameter(model);
  DiscreteMeasure mu(model, {{x, 0.5}, {y, 0.5}});
  return {4.0 / diam, x, y, std::move(mu), f_xy(model, x, y)};
}

// ---------------------------------------------------------------------------
// Dirichlet optimal eigenvalue: 1 / max_x r_A(x), with r_A quadratic per edge.

namespace {

struct GroundedGreen {
  MetricGraphModel model;  // refined so the sample points are vertices
  PointMap map;
  std::vector<int> pos;    // vertex index -> grounded index, -1 when grounded
  Matrix inv;

  double diag(const GraphPoint& p) const {
    GraphPoint q = model.canonicalize(map(p));
    int i = pos[model.vertex_index(q.vertex)];
    return i < 0 ? 0.0 : inv(i, i);
  }
};

GroundedGreen make_green(const MetricGraphModel& model, const std::vector<VertexId>& grounded,
                         std::span<const GraphPoint> extra_points) {
  auto [refined, map] = model.subdivide_at(extra_points);
  SymMatrix L = assemble_laplacian(refined);
  const int n = L.size();
  std::vector<char> g(n, 0);
  for (VertexId a : grounded) g[refined.vertex_index(a)] = 1;
  std::vector<int> pos(n, -1), live;
  for (int i = 0; i < n; ++i)
    if (!g[i]) {
      pos[i] = static_cast<int>(live.size());
      live.push_back(i);
    }
  Matrix A(live.size(), live.size());
  for (size_t i = 0; i < live.size(); ++i)
    for (size_t j = 0; j < live.size(); ++j) A(i, j) = L(live[i], live[j]);
  Eigen::LLT<Matrix> llt(A);
  if (llt.info() != Eigen::Success)
    throw SingularInteriorBlock("grounded Laplacian is not positive definite");
  Matrix inv = llt.solve(Matrix::Identity(A.rows(), A.cols()));
  return {std::move(refined), std::move(map), std::move(pos), std::move(inv)};
}

struct Quad1D {
  double a, b, c;  // a t^2 + b t + c
  double eval(double t) const { return (a * t + b) * t + c; }
};

Quad1D quad_through(double l, double r0, double rm, double r1) {
  // exact quadratic through (0, r0), (l/2, rm), (l, r1)
  Quad1D q;
  q.c = r0;
  q.a = (2 * r0 - 4 * rm + 2 * r1) / (l * l);
  q.b = (r1 - r0) / l - q.a * l;
  return q;
}

}  // namespace

std::pair<double, GraphPoint> lambda0_min_dirichlet(const MetricGraphModel& model,
                                                    const DirichletSpec& A) {
  if (A.points.empty()) throw EmptyBoundary("Dirichlet set is empty");
  std::vector<GraphPoint> apts;
  for (const GraphPoint& p : A.points) apts.push_back(model.canonicalize(p));
  auto [base, base_map] = model.subdivide_at(apts);
  std::vector<VertexId> grounded;
  for (const GraphPoint& p : apts)
    grounded.push_back(base.canonicalize(base_map(p)).vertex);
  std::sort(grounded.begin(), grounded.end());
  grounded.erase(std::unique(grounded.begin(), grounded.end()), grounded.end());

  // one shared grounded inverse with 5 interior samples per edge
  const double fr[5] = {1.0 / 6, 1.0 / 3, 0.5, 2.0 / 3, 5.0 / 6};
  std::vector<GraphPoint> samples;
  for (const EdgeSpec& e : base.edges())
    for (double f : fr) samples.push_back(GraphPoint::on_edge(e.id, f * e.length));
  GroundedGreen G = make_green(base, grounded, samples);

  double best_r = -1;
  GraphPoint best_x;
  bool have = false;
  auto record = [&](double r, const GraphPoint& p) {
    GraphPoint c = base.canonicalize(p);
    if (!have || r > best_r + 1e-12 * std::max(1.0, best_r)) {
      best_r = r;
      best_x = c;
      have = true;
    } else if (std::abs(r - best_r) <= 1e-12 * std::max(1.0, best_r) &&
               base.sort_key(c) < base.sort_key(best_x)) {
      best_x = c;
    }
  };

  for (const EdgeSpec& e : base.edges()) {
    double l = e.length;
    auto at = [&](double f) { return G.diag(GraphPoint::on_edge(e.id, f * l)); };
    double r0 = G.diag(GraphPoint::at_vertex(e.u));
    double r1 = G.diag(GraphPoint::at_vertex(e.v));
    Quad1D q = quad_through(l, r0, at(0.5), r1);
    // validate the quadratic model on held-out samples
    double rmax = std::max({r0, r1, at(0.5)});
    bool ok = true;
    for (double f : {fr[0], fr[1], fr[3], fr[4]}) {
      double exact = at(f);
      rmax = std::max(rmax, exact);
      if (std::abs(q.eval(f * l) - exact) > 1e-9 * std::max(rmax, 1e-300)) ok = false;
    }
    if (ok) {
      record(q.eval(0), GraphPoint::at_vertex(e.u));
      record(q.eval(l), GraphPoint::at_vertex(e.v));
      if (std::abs(q.a) > 1e-300) {
        double t = -q.b / (2 * q.a);
        // strictly interior after snapping fit noise off the endpoints
        if (t > 1e-9 * l && t < (1 - 1e-9) * l)
          record(q.eval(t), GraphPoint::on_edge(e.id, t));
      }
    } else {
      // fallback: dense sampling with local refinement on this edge
      double lo = 0, hi = l, bt = 0, bv = -1;
      for (int round = 0; round < 4; ++round) {
        const int n = 64;
        std::vector<GraphPoint> pts;
        for (int i = 0; i <= n; ++i)
          pts.push_back(GraphPoint::on_edge(e.id, lo + (hi - lo) * i / n));
        GroundedGreen Gf = make_green(base, grounded, pts);
        for (int i = 0; i <= n; ++i) {
          double t = lo + (hi - lo) * i / n;
          double v = Gf.diag(GraphPoint::on_edge(e.id, t));
          if (v > bv) {
            bv = v;
            bt = t;
          }
        }
        double step = (hi - lo) / n;
        lo = std::max(0.0, bt - step);
        hi = std::min(l, bt + step);
      }
      record(bv, GraphPoint::on_edge(e.id, bt));
    }
  }
  if (!have) throw DirichletCoversGraph("no candidate point remains outside the Dirichlet set");
  return {1.0 / best_r, best_x};
}

// ---------------------------------------------------------------------------
// Spectral 2-partition from the nodal domains of the lambda_1^min potential.

Partition2 partition_l2(const MetricGraphModel& model) {
  OptimalFirstEigenvalue ofe = lambda1_min(model);
  const PiecewiseLinearFunction& f = ofe.eigenfunction;
  const MetricGraphModel& mr = f.model();
  double norm = std::max(std::abs(f.max()), std::abs(f.min()));
  double ztol = 1e-12 * norm;

  std::vector<GraphPoint> cut_pts;
  for (const EdgeSpec& e : mr.edges()) {
    double fu = f.at_vertex(e.u), fv = f.at_vertex(e.v);
    if ((fu > ztol && fv < -ztol) || (fu < -ztol && fv > ztol))
      cut_pts.push_back(GraphPoint::on_edge(e.id, e.length * fu / (fu - fv)));
  }
  auto [m2, map2] = mr.subdivide_at(cut_pts);

  // function values on the cut model; fresh vertices are zeros by construction
  std::map<VertexId, double> val;
  for (VertexId v : mr.vertices()) val[v] = f.at_vertex(v);
  std::vector<VertexId> cuts_v;
  std::vector<GraphPoint> cuts;
  for (const GraphPoint& p : cut_pts) {
    VertexId v = m2.canonicalize(map2(p)).vertex;
    val[v] = 0.0;
    cuts_v.push_back(v);
    cuts.push_back(GraphPoint::at_vertex(v));
  }
  for (VertexId v : m2.vertices())
    if (std::abs(val[v]) <= ztol && !std::count(cuts_v.begin(), cuts_v.end(), v)) {
      cuts_v.push_back(v);
      cuts.push_back(GraphPoint::at_vertex(v));
    }

  auto side = [&](int sign) {
    std::vector<EdgeSpec> es;
    std::vector<VertexId> vs;
    for (const EdgeSpec& e : m2.edges()) {
      double a = val[e.u] * sign, b = val[e.v] * sign;
      if (a >= -ztol && b >= -ztol && (a > ztol || b > ztol)) es.push_back(e);
    }
    std::map<VertexId, char> seen;
    for (const EdgeSpec& e : es) {
      seen[e.u] = 1;
      seen[e.v] = 1;
    }
    for (auto [v, _] : seen) vs.push_back(v);
    return std::make_pair(vs, es);
  };

  auto [pv, pe] = side(+1);
  auto [nv, ne] = side(-1);
  double worst = 0;
  for (auto* s : {&pv, &nv}) {
    auto& es = (s == &pv) ? pe : ne;
    MetricGraphModel sub = MetricGraphModel::build(*s, es);  // throws if a side is disconnected
    DirichletSpec A;
    for (VertexId c : cuts_v)
      if (sub.has_vertex(c)) A.points.push_back(GraphPoint::at_vertex(c));
    auto [lam0, xstar] = lambda0_min_dirichlet(sub, A);
    worst = std::max(worst, 2.0 * lam0);
  }

  return {std::move(m2), std::move(cuts), std::move(pv), std::move(nv), worst, ofe.value};
}

// ---------------------------------------------------------------------------
// Cheeger-type constant on an essential model.

namespace {

// lightweight multigraph that, unlike MetricGraphModel, may carry loops
struct MultiGraph {
  struct E {
    int u, v;
    double len;
  };
  std::vector<E> edges;
  int n = 0;

  int degree(int v) const {
    int d = 0;
    for (const E& e : edges) {
      if (e.u == v) ++d;
      if (e.v == v) ++d;
    }
    return d;
  }
};

// suppress degree-2 vertices until the model is essential
MultiGraph essential_model(const MetricGraphModel& model) {
  MultiGraph g;
  std::map<VertexId, int> idx;
  for (VertexId v : model.vertices()) idx[v] = g.n++;
  for (const EdgeSpec& e : model.edges()) g.edges.push_back({idx[e.u], idx[e.v], e.length});

  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < g.n; ++v) {
      std::vector<int> inc;
      bool has_loop = false;
      for (size_t i = 0; i < g.edges.size(); ++i) {
        if (g.edges[i].u == v && g.edges[i].v == v) has_loop = true;
        else if (g.edges[i].u == v || g.edges[i].v == v) inc.push_back(static_cast<int>(i));
      }
      if (has_loop || inc.size() != 2) continue;
      if (g.degree(v) != 2) continue;
      // merge the two incident edges across v
      auto& e1 = g.edges[inc[0]];
      auto& e2 = g.edges[inc[1]];
      int a = (e1.u == v) ? e1.v : e1.u;
      int b = (e2.u == v) ? e2.v : e2.u;
      double len = e1.len + e2.len;
      // a == b produces a loop, the legal terminal case (cycle -> single loop)
      g.edges[inc[0]] = {a, b, len};
      g.edges.erase(g.edges.begin() + inc[1]);
      changed = true;
      break;
    }
  }
  return g;
}

// bridges of a multigraph; loops and parallel edges are never bridges
std::vector<int> find_bridges(const MultiGraph& g) {
  std::vector<std::vector<std::pair<int, int>>> adj(g.n);  // (neighbor, edge index)
  for (size_t i = 0; i < g.edges.size(); ++i) {
    const auto& e = g.edges[i];
    if (e.u == e.v) continue;
    adj[e.u].push_back({e.v, static_cast<int>(i)});
    adj[e.v].push_back({e.u, static_cast<int>(i)});
  }
  std::vector<int> disc(g.n, -1), low(g.n, 0);
  std::vector<int> bridges;
  int timer = 0;
  // iterative DFS
  struct Frame {
    int v, parent_edge;
    size_t next = 0;
  };
  for (int s = 0; s < g.n; ++s) {
    if (disc[s] != -1) continue;
    std::vector<Frame> stack{{s, -1}};
    disc[s] = low[s] = timer++;
    while (!stack.empty()) {
      Frame& fr = stack.back();
      if (fr.next < adj[fr.v].size()) {
        auto [w, ei] = adj[fr.v][fr.next++];
        if (ei == fr.parent_edge) continue;
        if (disc[w] == -1) {
          disc[w] = low[w] = timer++;
          stack.push_back({w, ei});
        } else {
          low[fr.v] = std::min(low[fr.v], disc[w]);
        }
      } else {
        int v = fr.v, pe = fr.parent_edge;
        stack.pop_back();
        if (!stack.empty()) {
          int p = stack.back().v;
          low[p] = std::min(low[p], low[v]);
          if (low[v] > disc[p]) bridges.push_back(pe);
        }
      }
    }
  }
  return bridges;
}

}  // namespace

CheegerResult cheeger_constant(const MetricGraphModel& model) {
  MultiGraph g = essential_model(model);

  double bridge_term = kInf;
  for (int bi : find_bridges(g)) bridge_term = std::min(bridge_term, 1.0 / g.edges[bi].len);

  double pair_term = kInf;
  if (g.edges.size() >= 2) {
    std::vector<double> lens;
    for (const auto& e : g.edges) lens.push_back(e.len);
    std::sort(lens.begin(), lens.end(), std::greater<>());
    pair_term = 1.0 / lens[0] + 1.0 / lens[1];
  }

  double single_term = kInf;
  for (const auto& e : g.edges) single_term = std::min(single_term, 4.0 / e.len);

  double h = std::min({bridge_term, pair_term, single_term});
  CheegerResult::Witness w = CheegerResult::Witness::SingleEdge;
  if (h == bridge_term) w = CheegerResult::Witness::Bridge;
  else if (h == pair_term) w = CheegerResult::Witness::EdgePair;
  return {h, w};
}

// ---------------------------------------------------------------------------
// Path closed forms and interlacing bounds.

PathOptimal lambda_k_min_path(double L, int k) {
  if (L <= 0) throw NonpositiveLength("path length must be positive");
  if (k < 0) throw IndexOutOfRange("k must be >= 0");
  PathOptimal out;
  out.value = 4.0 * k * k / L;
  if (k == 0) {
    out.positions = {0.0};
    out.masses = {1.0};
    return out;
  }
  out.positions.push_back(0.0);
  out.masses.push_back(0.5 / k);
  for (int j = 1; j < k; ++j) {
    out.positions.push_back(L * j / k);
    out.masses.push_back(1.0 / k);
  }
  out.positions.push_back(L);
  out.masses.push_back(0.5 / k);
  return out;
}

std::pair<double, double> interlacing_bounds(const MetricGraphModel& model, int k) {
  if (k < 0) throw IndexOutOfRange("k must be >= 0");
  const double L = model.total_length();
  const int E = static_cast<int>(model.edges().size());
  const int V = static_cast<int>(model.vertices().size());
  double lower = 0;
  if (k >= E - 1) {
    double d = k - (E - 1.0);
    lower = 4.0 * d * d / L;
  }
  double u = k + 2.0 * E - V;
  double upper = 4.0 * u * u / L;
  return {lower, upper};
}

// ---------------------------------------------------------------------------
// Multi-start Nelder-Mead search for lambda_k^min.

namespace {

struct EdgeTable {
  std::vector<EdgeId> ids;
  std::vector<double> lengths;
  std::vector<double> cumulative;  // cumulative length before each edge
  double L = 0;
};

EdgeTable edge_table(const MetricGraphModel& model) {
  EdgeTable t;
  for (const EdgeSpec& e : model.edges()) {
    t.ids.push_back(e.id);
    t.lengths.push_back(e.length);
    t.cumulative.push_back(t.L);
    t.L += e.length;
  }
  return t;
}

GraphPoint point_at_arclength(const EdgeTable& t, double pos) {
  pos = std::clamp(pos, 0.0, t.L);
  for (size_t i = 0; i < t.ids.size(); ++i) {
    if (pos <= t.cumulative[i] + t.lengths[i] || i + 1 == t.ids.size())
      return GraphPoint::on_edge(t.ids[i], std::clamp(pos - t.cumulative[i], 0.0, t.lengths[i]));
  }
  return GraphPoint::on_edge(t.ids.back(), t.lengths.back());
}

struct SearchObjective {
  const MetricGraphModel* model;
  const EdgeTable* table;
  int k;
  std::vector<int> edge_choice;  // per atom: index into table

  // params: [n_atoms offsets in [0,1]] ++ [n_atoms mass logits]
  DiscreteMeasure decode(const std::vector<double>& x) const {
    const int n = static_cast<int>(edge_choice.size());
    std::vector<DiscreteMeasure::Atom> atoms(n);
    double lmax = -kInf;
    for (int i = 0; i < n; ++i) lmax = std::max(lmax, x[n + i]);
    double zsum = 0;
    for (int i = 0; i < n; ++i) zsum += std::exp(x[n + i] - lmax);
    for (int i = 0; i < n; ++i) {
      int e = edge_choice[i];
      double u = std::clamp(x[i], 0.0, 1.0);
      // snap to the edge ends: an atom 1e-15 inside spawns a subdivision
      // edge whose conductance wrecks the Schur complement numerically
      if (u < 1e-9) u = 0.0;
      if (u > 1.0 - 1e-9) u = 1.0;
      atoms[i].point = GraphPoint::on_edge(table->ids[e], u * table->lengths[e]);
      atoms[i].mass = std::exp(x[n + i] - lmax) / zsum;
    }
    return DiscreteMeasure(*model, std::move(atoms));
  }

  double operator()(const std::vector<double>& x) const {
    DiscreteMeasure mu = decode(x);
    if (static_cast<int>(mu.atoms().size()) <= k) return 1e30;  // collision penalty
    // near-coincident atoms make ||H|| blow up and the eigensolver's
    // absolute error can then dip below the true minimum; keep the search
    // out of that regime (merging atoms never helps the top eigenvalue)
    const double min_sep = 1e-7 * model->total_length();
    const auto& as = mu.atoms();
    // local distance check suffices: min_sep is far below every edge length,
    // so near-coincident atoms share an edge or sit around a common vertex
    auto near = [&](const GraphPoint& a, const GraphPoint& b) {
      if (a.is_vertex() && b.is_vertex()) return false;  // distinct after merging
      if (!a.is_vertex() && !b.is_vertex() && a.edge == b.edge)
        return std::abs(a.offset - b.offset) < min_sep;
      auto ends = [&](const GraphPoint& p) {
        std::vector<std::pair<VertexId, double>> out;
        if (p.is_vertex()) {
          out.push_back({p.vertex, 0.0});
        } else {
          const EdgeSpec& e = model->edge(p.edge);
          out.push_back({e.u, p.offset});
          out.push_back({e.v, e.length - p.offset});
        }
        return out;
      };
      for (auto [va, da] : ends(a))
        for (auto [vb, db] : ends(b))
          if (va == vb && da + db < min_sep) return true;
      return false;
    };
    for (size_t i = 0; i < as.size(); ++i)
      for (size_t j = i + 1; j < as.size(); ++j)
        if (near(as[i].point, as[j].point)) return 1e30;
    SpectralDecomposition dec = spectrum(*model, mu);
    if (k >= static_cast<int>(dec.eigenvalues.size())) return 1e30;
    return dec.eigenvalues[k];
  }
};

struct NMResult {
  std::vector<double> x;
  double value = kInf;
  double initial = kInf;
};

NMResult nelder_mead(const SearchObjective& f, std::vector<double> x0, int max_iters,
                     double length_scale) {
  const int d = static_cast<int>(x0.size());
  const int n_atoms = d / 2;
  std::vector<std::vector<double>> pts(d + 1, x0);
  std::vector<double> vals(d + 1);
  for (int i = 0; i < d; ++i) pts[i + 1][i] += (i < n_atoms) ? 0.08 : 0.5;
  for (int i = 0; i <= d; ++i) vals[i] = f(pts[i]);
  double initial = vals[0];

  auto order = [&] {
    std::vector<int> idx(d + 1);
    for (int i = 0; i <= d; ++i) idx[i] = i;
    std::sort(idx.begin(), idx.end(), [&](int a, int b) { return vals[a] < vals[b]; });
    std::vector<std::vector<double>> np(d + 1);
    std::vector<double> nv(d + 1);
    for (int i = 0; i <= d; ++i) {
      np[i] = pts[idx[i]];
      nv[i] = vals[idx[i]];
    }
    pts = std::move(np);
    vals = std::move(nv);
  };

  for (int iter = 0; iter < max_iters; ++iter) {
    order();
    // convergence: simplex small in parameters and flat in value
    double diam = 0;
    for (int i = 1; i <= d; ++i)
      for (int j = 0; j < d; ++j) diam = std::max(diam, std::abs(pts[i][j] - pts[0][j]));
    if (diam < 1e-9 * std::max(length_scale, 1.0) &&
        std::abs(vals[d] - vals[0]) < 1e-9 * std::max(std::abs(vals[0]), 1.0))
      break;

    std::vector<double> centroid(d, 0.0);
    for (int i = 0; i < d; ++i)
      for (int j = 0; j < d; ++j) centroid[j] += pts[i][j] / d;

    auto blend = [&](double t) {
      std::vector<double> p(d);
      for (int j = 0; j < d; ++j) p[j] = centroid[j] + t * (pts[d][j] - centroid[j]);
      return p;
    };

    std::vector<double> xr = blend(-1.0);
    double fr = f(xr);
    if (fr < vals[0]) {
      std::vector<double> xe = blend(-2.0);
      double fe = f(xe);
      if (fe < fr) {
        pts[d] = std::move(xe);
        vals[d] = fe;
      } else {
        pts[d] = std::move(xr);
        vals[d] = fr;
      }
    } else if (fr < vals[d - 1]) {
      pts[d] = std::move(xr);
      vals[d] = fr;
    } else {
      std::vector<double> xc = blend(fr < vals[d] ? -0.5 : 0.5);
      double fc = f(xc);
      if (fc < std::min(fr, vals[d])) {
        pts[d] = std::move(xc);
        vals[d] = fc;
      } else {
        for (int i = 1; i <= d; ++i) {
          for (int j = 0; j < d; ++j) pts[i][j] = pts[0][j] + 0.5 * (pts[i][j] - pts[0][j]);
          vals[i] = f(pts[i]);
        }
      }
    }
  }
  order();
  return {pts[0], vals[0], initial};
}

// Structured seeds: atoms equidistributed along the edge concatenation.
// The endpoint variant reproduces the path-optimal measure exactly on a
// path; the phased variant uses an irrational phase so that no atom can
// land on a vertex (and collapse by merging) for any rational edge lengths.
SearchObjective structured_seed(const MetricGraphModel& model, const EdgeTable& t, int k,
                                int n_atoms, bool midpoints, std::vector<double>& x0) {
  SearchObjective obj{&model, &t, k, {}};
  x0.assign(2 * n_atoms, 0.0);
  const double phase = 1.0 / std::numbers::sqrt2;
  for (int i = 0; i < n_atoms; ++i) {
    double pos = midpoints ? t.L * (i + phase) / n_atoms : t.L * i / (n_atoms - 1);
    GraphPoint p = point_at_arclength(t, pos);
    int e = 0;
    for (size_t j = 0; j < t.ids.size(); ++j)
      if (t.ids[j] == p.edge) e = static_cast<int>(j);
    obj.edge_choice.push_back(e);
    x0[i] = p.offset / t.lengths[e];
    bool endpoint = !midpoints && (i == 0 || i == n_atoms - 1);
    x0[n_atoms + i] = std::log(endpoint ? 0.5 : 1.0);
  }
  return obj;
}

}  // namespace

KthSearchResult lambda_k_min_search(const MetricGraphModel& model, int k,
                                    const SearchOptions& options) {
  EdgeTable t = edge_table(model);
  auto [lower, upper] = interlacing_bounds(model, k);

  if (k == 0) {
    DiscreteMeasure mu(model, {{GraphPoint::at_vertex(model.vertices().front()), 1.0}});
    return {0, 0.0, std::move(mu), lower, upper, 0, true, false};
  }

  const int restarts = options.restarts > 0 ? options.restarts : 32 * (k + 1);
  const int E = static_cast<int>(t.ids.size());

  struct RestartOut {
    double value = kInf;
    double initial = kInf;
    std::vector<double> x;
    std::vector<int> edges;
    int n_atoms = 0;
  };
  std::vector<RestartOut> results(restarts);

  auto run_restart = [&](int r) {
    RestartOut out;
    bool probe_extra = (r % 10 == 9);  // give the k+1-support conjecture a chance to fail
    int n_atoms = (k + 1) + (probe_extra ? 1 : 0);
    out.n_atoms = n_atoms;
    std::vector<double> x0;
    SearchObjective obj{&model, &t, k, {}};
    if (r == 0 || r == 1) {
      obj = structured_seed(model, t, k, n_atoms, r == 1, x0);
    } else {
      std::mt19937_64 rng(options.seed * 0x9e3779b97f4a7c15ULL + r);
      std::uniform_int_distribution<int> edge_pick(0, E - 1);
      std::uniform_real_distribution<double> unit(0.0, 1.0);
      std::normal_distribution<double> gauss(0.0, 0.5);
      x0.assign(2 * n_atoms, 0.0);
      for (int i = 0; i < n_atoms; ++i) {
        obj.edge_choice.push_back(edge_pick(rng));
        x0[i] = unit(rng);
        x0[n_atoms + i] = gauss(rng);
      }
    }
    NMResult nm = nelder_mead(obj, x0, options.max_iters, 1.0);
    out.value = nm.value;
    out.initial = nm.initial;
    out.x = std::move(nm.x);
    out.edges = obj.edge_choice;
    return out;
  };

  if (options.threads > 1) {
    std::atomic<int> next{0};
    std::vector<std::thread> workers;
    for (int w = 0; w < options.threads; ++w)
      workers.emplace_back([&] {
        int r;
        while ((r = next.fetch_add(1)) < restarts) results[r] = run_restart(r);
      });
    for (auto& th : workers) th.join();
  } else {
    for (int r = 0; r < restarts; ++r) results[r] = run_restart(r);
  }

  // deterministic reduction: best value, ties to the lowest restart index
  int best = 0;
  double min_initial = kInf;
  double best_plain = kInf;  // best among k+1-atom restarts
  for (int r = 0; r < restarts; ++r) {
    if (results[r].value < results[best].value - 1e-15) best = r;
    min_initial = std::min(min_initial, results[r].initial);
    if (results[r].n_atoms == k + 1) best_plain = std::min(best_plain, results[r].value);
  }
  const RestartOut& win = results[best];
  SearchObjective obj{&model, &t, k, win.edges};
  DiscreteMeasure mu = obj.decode(win.x);

  double vtol = 1e-7 * std::max(std::abs(win.value), 1.0);
  bool converged = win.value <= min_initial + vtol && win.value >= lower - vtol &&
                   win.value <= upper + vtol && win.value < 1e29;
  bool extra_improved = win.value < best_plain - 1e-6 * std::max(best_plain, 1.0) &&
                        win.n_atoms > k + 1;
  return {k, win.value, std::move(mu), lower, upper, restarts, converged, extra_improved};
}

std::vector<WeylRow> weyl_scan(const MetricGraphModel& model, int k_max,
                               const SearchOptions& options, bool bounds_only) {
  if (k_max < 1) throw IndexOutOfRange("k_max must be >= 1");
  const double L = model.total_length();
  std::vector<WeylRow> rows;
  for (int k = 1; k <= k_max; ++k) {
    auto [lower, upper] = interlacing_bounds(model, k);
    WeylRow row;
    row.k = k;
    row.lower = lower;
    row.upper = upper;
    double scale = 4.0 * k * k / L;
    row.lower_ratio = lower / scale;
    row.upper_ratio = upper / scale;
    if (bounds_only) {
      row.estimate = std::numeric_limits<double>::quiet_NaN();
      row.ratio = std::numeric_limits<double>::quiet_NaN();
    } else {
      KthSearchResult r = lambda_k_min_search(model, k, options);
      row.estimate = r.value;
      row.ratio = r.value / scale;
    }
    rows.push_back(row);
  }
  return rows;
}

}  // namespace mgs

#include "mgs/harmonic.hpp"

#include <algorithm>
#include <cmath>

namespace mgs {

double PiecewiseLinearFunction::operator()(const GraphPoint& p) const {
  GraphPoint c = model_.canonicalize(p);
  if (c.is_vertex()) return at_vertex(c.vertex);
  const EdgeSpec& e = model_.edge(c.edge);
  double fu = at_vertex(e.u), fv = at_vertex(e.v);
  return fu + (fv - fu) * (c.offset / e.length);
}

SymMatrix assemble_laplacian(const MetricGraphModel& model) {
  const int n = static_cast<int>(model.vertices().size());
  SymMatrix L(n);
  for (const EdgeSpec& e : model.edges()) {
    double c = 1.0 / e.length;
    int iu = model.vertex_index(e.u), iv = model.vertex_index(e.v);
    L.add(iu, iu, c);
    L.add(iv, iv, c);
    L.add(iu, iv, -c);
  }
  return L;
}

PiecewiseLinearFunction harmonic_extension(const MetricGraphModel& model,
                                           const std::map<VertexId, double>& boundary) {
  if (boundary.empty()) throw EmptyBoundary("harmonic extension needs boundary data");
  const int n = static_cast<int>(model.vertices().size());
  Vector values = Vector::Zero(n);
  std::vector<char> pinned(n, 0);
  for (auto [v, val] : boundary) {
    int i = model.vertex_index(v);
    values[i] = val;
    pinned[i] = 1;
  }
  std::vector<int> free;
  for (int i = 0; i < n; ++i)
    if (!pinned[i]) free.push_back(i);
  if (free.empty()) return {model, std::move(values)};

  SymMatrix L = assemble_laplacian(model);
  const int nf = static_cast<int>(free.size());
  SymMatrix A(nf);
  Vector b = Vector::Zero(nf);
  for (int i = 0; i < nf; ++i) {
    for (int j = 0; j < nf; ++j) A.set(i, j, L(free[i], free[j]));
    for (int p = 0; p < n; ++p)
      if (pinned[p]) b[i] -= L(free[i], p) * values[p];
  }
  Vector x = solve_spd(A, b);
  for (int i = 0; i < nf; ++i) values[free[i]] = x[i];
  return {model, std::move(values)};
}

double energy(const PiecewiseLinearFunction& f) {
  double q = 0;
  for (const EdgeSpec& e : f.model().edges()) {
    double d = f.at_vertex(e.u) - f.at_vertex(e.v);
    q += d * d / e.length;
  }
  return q;
}

HarmonicCheck is_harmonic(const PiecewiseLinearFunction& f,
                          const std::vector<VertexId>& free_vertices) {
  const MetricGraphModel& m = f.model();
  double range = f.max() - f.min();
  double max_cond = 0;
  for (const EdgeSpec& e : m.edges()) max_cond = std::max(max_cond, 1.0 / e.length);

  double worst = 0;
  for (VertexId v : free_vertices) {
    double flux = 0;
    for (const EdgeSpec& e : m.edges()) {
      // derivative pointing into v, summed over both endpoints (loops are
      // absent after normalization)
      if (e.u == v) flux += (f.at_vertex(e.v) - f.at_vertex(e.u)) / e.length;
      if (e.v == v) flux += (f.at_vertex(e.u) - f.at_vertex(e.v)) / e.length;
    }
    worst = std::max(worst, std::abs(flux));
  }
  bool ok = worst <= 1e-8 * std::max(max_cond * range, 1e-300) + 1e-300;
  return {ok, worst};
}

std::pair<MetricGraphModel, double> reduce_parallel(const MetricGraphModel& model,
                                                    VertexId x1, VertexId x2) {
  model.vertex_index(x1);
  model.vertex_index(x2);
  std::vector<EdgeSpec> kept;
  double inv_sum = 0;
  int count = 0;
  EdgeId bundle_id = -1;
  for (const EdgeSpec& e : model.edges()) {
    if ((e.u == x1 && e.v == x2) || (e.u == x2 && e.v == x1)) {
      inv_sum += 1.0 / e.length;
      ++count;
      bundle_id = std::max(bundle_id, e.id);
    } else {
      kept.push_back(e);
    }
  }
  if (count < 2)
    throw NoParallelEdges("vertices " + std::to_string(x1) + ", " + std::to_string(x2) +
                          " are joined by " + std::to_string(count) + " edge(s)");
  double merged = 1.0 / inv_sum;
  EdgeId fresh = bundle_id;
  for (const EdgeSpec& e : kept) fresh = std::max(fresh, e.id);
  kept.push_back({fresh + 1, x1, x2, merged});

  // drop vertices that lost all incident edges (none can, since the bundle
  // endpoints survive), rebuild to revalidate connectivity
  return {MetricGraphModel::build(model.vertices(), kept), merged};
}

}  // namespace mgs

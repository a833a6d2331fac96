#include "mgs/spectral.hpp"

#include <algorithm>
#include <cmath>

namespace mgs {

DiscreteMeasure::DiscreteMeasure(const MetricGraphModel& model, std::vector<Atom> atoms) {
  if (atoms.empty()) throw ParseError("a measure needs at least one atom");
  for (Atom& a : atoms) {
    if (!(a.mass > 0) || !std::isfinite(a.mass))
      throw NegativeDensity("atom mass " + std::to_string(a.mass) + " must be positive");
    // atoms within the merge tolerance of an edge end are the end itself;
    // like merging, this guards the refinement against degenerate edges
    if (!a.point.is_vertex()) {
      double snap = 1e-12 * model.total_length();
      const EdgeSpec& e = model.edge(a.point.edge);
      if (a.point.offset <= snap) a.point.offset = 0.0;
      if (a.point.offset >= e.length - snap) a.point.offset = e.length;
    }
    a.point = model.canonicalize(a.point);
  }
  double merge_tol = 1e-12 * model.total_length();
  std::sort(atoms.begin(), atoms.end(), [&](const Atom& a, const Atom& b) {
    return model.sort_key(a.point) < model.sort_key(b.point);
  });
  for (const Atom& a : atoms) {
    if (!atoms_.empty() &&
        (atoms_.back().point == a.point ||
         model.path_distance(atoms_.back().point, a.point) <= merge_tol)) {
      atoms_.back().mass += a.mass;
    } else {
      atoms_.push_back(a);
    }
  }
  for (const Atom& a : atoms_) total_ += a.mass;
}

DiscreteMeasure DiscreteMeasure::normalized(const MetricGraphModel& model) const {
  std::vector<Atom> scaled = atoms_;
  for (Atom& a : scaled) a.mass /= total_;
  return DiscreteMeasure(model, std::move(scaled));
}

RefinedProblem refine_for_measure(const MetricGraphModel& model, const DiscreteMeasure& mu,
                                  const std::optional<DirichletSpec>& A) {
  double merge_tol = 1e-12 * model.total_length();
  std::vector<GraphPoint> dir_points;
  if (A) {
    for (const GraphPoint& p : A->points) dir_points.push_back(model.canonicalize(p));
  }
  for (const auto& a : mu.atoms())
    for (const GraphPoint& d : dir_points)
      if (a.point == d || model.path_distance(a.point, d) <= merge_tol)
        throw MeasureMeetsDirichlet("atom at " + to_string(a.point) +
                                    " lies on the Dirichlet set");

  std::vector<GraphPoint> all;
  for (const auto& a : mu.atoms()) all.push_back(a.point);
  all.insert(all.end(), dir_points.begin(), dir_points.end());

  auto [refined, map] = model.subdivide_at(all);
  RefinedProblem out{std::move(refined), std::move(map), {}, {}, {}};
  for (const auto& a : mu.atoms()) {
    out.support.push_back(out.model.canonicalize(out.map(a.point)).vertex);
    out.masses.push_back(a.mass);
  }
  for (const GraphPoint& d : dir_points)
    out.dirichlet.push_back(out.model.canonicalize(out.map(d)).vertex);
  return out;
}

SymMatrix dtn_matrix(const MetricGraphModel& model, const std::vector<VertexId>& B,
                     const std::vector<VertexId>& A) {
  if (B.empty()) throw EmptyBoundary("DtN reduction needs a nonempty support");
  for (VertexId b : B)
    for (VertexId a : A)
      if (a == b) throw MeasureMeetsDirichlet("support vertex " + std::to_string(b) +
                                              " is also a Dirichlet vertex");
  SymMatrix L = assemble_laplacian(model);
  const int n = L.size();
  std::vector<char> grounded(n, 0);
  for (VertexId a : A) grounded[model.vertex_index(a)] = 1;

  // compress out the grounded rows/columns, then Schur onto B
  std::vector<int> live;
  std::vector<int> pos(n, -1);
  for (int i = 0; i < n; ++i)
    if (!grounded[i]) {
      pos[i] = static_cast<int>(live.size());
      live.push_back(i);
    }
  if (live.empty()) throw DirichletCoversGraph("every vertex is grounded");
  SymMatrix Lg(static_cast<int>(live.size()));
  for (size_t i = 0; i < live.size(); ++i)
    for (size_t j = 0; j < live.size(); ++j)
      Lg.set(static_cast<int>(i), static_cast<int>(j), L(live[i], live[j]));

  std::vector<int> keep;
  for (VertexId b : B) keep.push_back(pos[model.vertex_index(b)]);
  return schur_complement(Lg, keep);
}

SpectralDecomposition spectrum(const MetricGraphModel& model, const DiscreteMeasure& mu,
                               const std::optional<DirichletSpec>& A) {
  RefinedProblem rp = refine_for_measure(model, mu, A);
  SymMatrix S = dtn_matrix(rp.model, rp.support, rp.dirichlet);
  const int n = S.size();
  Vector half_inv(n);
  for (int i = 0; i < n; ++i) half_inv[i] = 1.0 / std::sqrt(rp.masses[i]);
  Matrix K = half_inv.asDiagonal() * S.dense() * half_inv.asDiagonal();
  EigResult eig = sym_eig(SymMatrix(0.5 * (K + K.transpose())));
  Matrix vecs = half_inv.asDiagonal() * eig.vectors;  // M-orthonormal
  return {std::move(rp), std::move(eig.values), std::move(vecs)};
}

PiecewiseLinearFunction extend_eigenfunction(const SpectralDecomposition& dec, int k) {
  if (k < 0 || k >= dec.eigenvalues.size())
    throw IndexOutOfRange("eigenfunction index " + std::to_string(k) + " of " +
                          std::to_string(dec.eigenvalues.size()));
  std::map<VertexId, double> boundary;
  for (size_t i = 0; i < dec.problem.support.size(); ++i)
    boundary[dec.problem.support[i]] = dec.eigenvectors(static_cast<int>(i), k);
  for (VertexId a : dec.problem.dirichlet) boundary[a] = 0.0;
  return harmonic_extension(dec.problem.model, boundary);
}

int count_zeros_on_path(const PiecewiseLinearFunction& f) {
  const MetricGraphModel& m = f.model();
  // order the vertices along the path by walking from a degree-1 endpoint
  std::vector<VertexId> ends;
  for (VertexId v : m.vertices()) {
    int d = m.vertex_degree(v);
    if (d > 2) throw PointOffModel("model is not a path (vertex of degree > 2)");
    if (d == 1) ends.push_back(v);
  }
  if (ends.size() != 2) throw PointOffModel("model is not a path");

  std::vector<VertexId> order;
  VertexId cur = std::min(ends[0], ends[1]);
  EdgeId prev_edge = -1;
  order.push_back(cur);
  while (true) {
    bool advanced = false;
    for (const EdgeSpec& e : m.edges()) {
      if (e.id == prev_edge) continue;
      if (e.u == cur || e.v == cur) {
        cur = (e.u == cur) ? e.v : e.u;
        prev_edge = e.id;
        order.push_back(cur);
        advanced = true;
        break;
      }
    }
    if (!advanced) break;
  }

  double norm = std::max(std::abs(f.max()), std::abs(f.min()));
  if (norm == 0) throw IdenticallyZeroSegment("function is identically zero");
  double ztol = 1e-11 * norm;

  const int n = static_cast<int>(order.size());
  std::vector<int> sign(n);
  for (int i = 0; i < n; ++i) {
    double v = f.at_vertex(order[i]);
    sign[i] = std::abs(v) <= ztol ? 0 : (v > 0 ? 1 : -1);
  }
  for (int i = 0; i + 1 < n; ++i)
    if (sign[i] == 0 && sign[i + 1] == 0)
      throw IdenticallyZeroSegment("function vanishes on a whole subedge");

  int zeros = 0;
  for (int i = 1; i + 1 < n; ++i)
    if (sign[i] == 0) ++zeros;  // interior vertex zeros (endpoints excluded)
  for (int i = 0; i + 1 < n; ++i)
    if (sign[i] * sign[i + 1] < 0) ++zeros;  // strict crossings inside edges
  return zeros;
}

DiscreteMeasure discretize_ac(const MetricGraphModel& model,
                              const std::function<double(const GraphPoint&)>& density,
                              int atoms_per_edge) {
  if (atoms_per_edge < 1) throw ParseError("atoms_per_edge must be >= 1");
  std::vector<DiscreteMeasure::Atom> atoms;
  for (const EdgeSpec& e : model.edges()) {
    double h = e.length / atoms_per_edge;
    for (int i = 0; i < atoms_per_edge; ++i) {
      GraphPoint mid = GraphPoint::on_edge(e.id, (i + 0.5) * h);
      double d = density(mid);
      if (d < 0) throw NegativeDensity("density is negative at " + to_string(mid));
      if (d > 0) atoms.push_back({mid, d * h});
    }
  }
  if (atoms.empty()) throw NegativeDensity("density vanishes everywhere");
  return DiscreteMeasure(model, std::move(atoms));
}

}  // namespace mgs

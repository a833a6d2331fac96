#pragma once

#include <cmath>
#include <functional>
#include <optional>
#include <vector>

#include "mgs/graph.hpp"
#include "mgs/harmonic.hpp"

namespace mgs {

/// Finitely many weighted atoms on the graph. Atoms closer than
/// 1e-12 * L(G) merge by summing masses (guards against a singular mass
/// matrix from duplicated points).
class DiscreteMeasure {
 public:
  struct Atom {
    GraphPoint point;
    double mass;
  };

  DiscreteMeasure(const MetricGraphModel& model, std::vector<Atom> atoms);

  const std::vector<Atom>& atoms() const { return atoms_; }
  double total_mass() const { return total_; }
  bool is_probability() const { return std::abs(total_ - 1.0) <= 1e-12; }

  DiscreteMeasure normalized(const MetricGraphModel& model) const;

 private:
  std::vector<Atom> atoms_;
  double total_ = 0;
};

/// Dirichlet set: finitely many points pinned to zero.
struct DirichletSpec {
  std::vector<GraphPoint> points;
};

struct RefinedProblem {
  MetricGraphModel model;
  PointMap map;
  std::vector<VertexId> support;    // one vertex per atom, same order
  std::vector<double> masses;       // same order as support
  std::vector<VertexId> dirichlet;  // empty when no Dirichlet set given
};

/// Subdivides so every atom and Dirichlet point is a vertex. Rejects atoms
/// that coincide with Dirichlet points (the measure must vanish on A).
RefinedProblem refine_for_measure(const MetricGraphModel& model, const DiscreteMeasure& mu,
                                  const std::optional<DirichletSpec>& A = std::nullopt);

/// Schur complement of the (optionally A-grounded) weighted Laplacian onto B.
SymMatrix dtn_matrix(const MetricGraphModel& model, const std::vector<VertexId>& B,
                     const std::vector<VertexId>& A = {});

/// Eigendecomposition of H_mu on L^2(G, mu): eigenpairs of
/// M^{-1/2} S M^{-1/2} mapped back, with S the DtN matrix of the support
/// and M = diag(masses). Without a Dirichlet set, lambda_0 = 0 with
/// constant eigenvector.
struct SpectralDecomposition {
  RefinedProblem problem;
  Vector eigenvalues;  // ascending
  Matrix eigenvectors; // columns; M-orthonormal vectors on the support
};

SpectralDecomposition spectrum(const MetricGraphModel& model, const DiscreteMeasure& mu,
                               const std::optional<DirichletSpec>& A = std::nullopt);

/// Extends the k-th eigenvector to the whole graph: its values on supp mu,
/// zero on A, harmonic elsewhere.
PiecewiseLinearFunction extend_eigenfunction(const SpectralDecomposition& dec, int k);

/// Number of distinct zeros of the edgewise-linear f strictly inside a path
/// model. A vertex counts as a zero when |f| <= 1e-11 * ||f||_inf;
/// consecutive zero vertices mean f vanishes on a subedge, which is an
/// error (eigenfunctions never do).
int count_zeros_on_path(const PiecewiseLinearFunction& f);

/// Midpoint-rule discretization of an absolutely continuous measure:
/// n atoms per edge at midpoints of equal subintervals, each carrying
/// density(midpoint) * l / n.
DiscreteMeasure discretize_ac(const MetricGraphModel& model,
                              const std::function<double(const GraphPoint&)>& density,
                              int atoms_per_edge);

}  // namespace mgs

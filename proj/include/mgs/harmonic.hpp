#pragma once

#include <map>
#include <utility>

#include "mgs/graph.hpp"
#include "mgs/linalg.hpp"

namespace mgs {

/// Edgewise-linear function on a model, given by its vertex values.
class PiecewiseLinearFunction {
 public:
  PiecewiseLinearFunction(MetricGraphModel model, Vector vertex_values)
      : model_(std::move(model)), values_(std::move(vertex_values)) {}

  const MetricGraphModel& model() const { return model_; }
  const Vector& vertex_values() const { return values_; }

  double at_vertex(VertexId v) const { return values_[model_.vertex_index(v)]; }
  double operator()(const GraphPoint& p) const;

  double max() const { return values_.maxCoeff(); }
  double min() const { return values_.minCoeff(); }

 private:
  MetricGraphModel model_;
  Vector values_;
};

/// Vertex-indexed weighted Laplacian with conductances 1/l(e); parallel
/// edges aggregate. Zero row sums; PSD with kernel = constants.
SymMatrix assemble_laplacian(const MetricGraphModel& model);

/// Unique energy minimizer among edgewise-linear functions with the given
/// boundary values. Boundary data is accepted at vertices only.
PiecewiseLinearFunction harmonic_extension(const MetricGraphModel& model,
                                           const std::map<VertexId, double>& boundary);

/// Dirichlet energy sum over edges of (f(u) - f(v))^2 / l(e).
double energy(const PiecewiseLinearFunction& f);

struct HarmonicCheck {
  bool harmonic;
  double max_residual;  // largest absolute flux imbalance over the free vertices
};

/// Flux balance sum of f_e'(x) over incident edges at every free vertex.
HarmonicCheck is_harmonic(const PiecewiseLinearFunction& f,
                          const std::vector<VertexId>& free_vertices);

/// Replaces the bundle of parallel edges between x1 and x2 by a single edge
/// of the harmonic-sum length (series-parallel law).
std::pair<MetricGraphModel, double> reduce_parallel(const MetricGraphModel& model,
                                                    VertexId x1, VertexId x2);

}  // namespace mgs

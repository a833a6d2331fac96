#pragma once

#include <map>
#include <span>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "mgs/errors.hpp"

namespace mgs {

using VertexId = int;
using EdgeId = int;

/// One edge of a model. `length` is the metric length of the interval the
/// edge is identified with; offsets along the edge are measured from `u`.
struct EdgeSpec {
  EdgeId id = -1;
  VertexId u = -1;
  VertexId v = -1;
  double length = 0.0;
};

/// A point of the metric graph, either a vertex or an interior point of an
/// edge. Offsets 0 and length are canonicalized to the vertex form so that
/// equality is well defined across parallel edges.
struct GraphPoint {
  EdgeId edge = -1;      // valid iff vertex < 0
  double offset = 0.0;   // distance from endpoint u, strictly interior once canonical
  VertexId vertex = -1;  // >= 0 for the vertex form

  bool is_vertex() const { return vertex >= 0; }

  static GraphPoint at_vertex(VertexId v) {
    GraphPoint p;
    p.vertex = v;
    return p;
  }
  static GraphPoint on_edge(EdgeId e, double offset) {
    GraphPoint p;
    p.edge = e;
    p.offset = offset;
    return p;
  }

  friend bool operator==(const GraphPoint& a, const GraphPoint& b) {
    if (a.is_vertex() != b.is_vertex()) return false;
    if (a.is_vertex()) return a.vertex == b.vertex;
    return a.edge == b.edge && a.offset == b.offset;
  }
};

std::string to_string(const GraphPoint& p);

/// Tracks where points of a model end up after one or more subdivisions.
/// Total on every point of the pre-subdivision model; maps compose.
class PointMap {
 public:
  PointMap() = default;

  GraphPoint operator()(const GraphPoint& p) const;

  /// Composition: first apply *this, then `next`.
  PointMap then(const PointMap& next) const;

 private:
  struct Segment {
    double begin = 0.0;
    double end = 0.0;
    EdgeId new_edge = -1;
    VertexId begin_vertex = -1;  // vertex sitting at `begin`
    VertexId end_vertex = -1;    // vertex sitting at `end`
  };
  struct Layer {
    // Edges split in this layer; untouched edges map to themselves.
    std::map<EdgeId, std::vector<Segment>> segments;
  };
  std::vector<Layer> layers_;

  friend class MetricGraphModel;
};

/// Immutable combinatorial model (V, E, l) of a finite connected metric
/// graph. Loops are normalized away at construction by subdividing each loop
/// at its midpoint; parallel edges are kept. All operations are const and
/// safe for concurrent use.
class MetricGraphModel {
 public:
  static MetricGraphModel build(const std::vector<VertexId>& vertices,
                                const std::vector<EdgeSpec>& edges);

  const std::vector<VertexId>& vertices() const { return vertices_; }
  const std::vector<EdgeSpec>& edges() const { return edges_; }

  bool has_vertex(VertexId v) const { return vertex_index_.count(v) > 0; }
  bool has_edge(EdgeId e) const { return edge_index_.count(e) > 0; }
  const EdgeSpec& edge(EdgeId e) const;

  /// Dense index of a vertex id, for matrix assembly. Stable for a given model.
  int vertex_index(VertexId v) const;
  int edge_index(EdgeId e) const;

  double total_length() const;
  int degree(const GraphPoint& p) const;
  int vertex_degree(VertexId v) const;

  /// Validates the point and maps endpoint offsets to the vertex form.
  GraphPoint canonicalize(GraphPoint p) const;

  /// Returns a model in which every input point is a vertex, together with
  /// the map from points of this model to points of the refined one.
  std::pair<MetricGraphModel, PointMap> subdivide_at(std::span<const GraphPoint> points) const;

  double path_distance(const GraphPoint& x, const GraphPoint& y) const;

  /// Exact maximum of the path metric over G x G, with an attaining pair.
  /// Ties are broken towards the lexicographically smallest (edge id, offset).
  std::tuple<double, GraphPoint, GraphPoint> rho_diameter() const;

  /// All-pairs shortest path distances between vertices, indexed by
  /// vertex_index. O(V * E log V).
  std::vector<std::vector<double>> vertex_distance_matrix() const;

  /// Deterministic ordering key for points, used for tie-breaking:
  /// lexicographic (edge id, offset), vertices keyed by their smallest
  /// incident (edge id, endpoint offset).
  std::pair<EdgeId, double> sort_key(const GraphPoint& p) const;

 private:
  MetricGraphModel() = default;
  void index();

  std::vector<VertexId> vertices_;
  std::vector<EdgeSpec> edges_;
  std::map<VertexId, int> vertex_index_;
  std::map<EdgeId, int> edge_index_;
  std::map<VertexId, std::vector<int>> incident_;  // vertex -> indices into edges_
};

}  // namespace mgs

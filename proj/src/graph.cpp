#include "mgs/graph.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <set>
#include <sstream>

namespace mgs {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct UnionFind {
  std::map<VertexId, VertexId> parent;
  VertexId find(VertexId x) {
    auto it = parent.find(x);
    if (it == parent.end() || it->second == x) return x;
    return it->second = find(it->second);
  }
  void unite(VertexId a, VertexId b) { parent[find(a)] = find(b); }
};

}  // namespace

std::string to_string(const GraphPoint& p) {
  std::ostringstream os;
  if (p.is_vertex())
    os << "v:" << p.vertex;
  else
    os << p.edge << ":" << p.offset;
  return os.str();
}

GraphPoint PointMap::operator()(const GraphPoint& p) const {
  GraphPoint cur = p;
  for (const Layer& layer : layers_) {
    if (cur.is_vertex()) continue;  // vertex ids are stable across subdivision
    auto it = layer.segments.find(cur.edge);
    if (it == layer.segments.end()) continue;
    const auto& segs = it->second;
    GraphPoint mapped;
    bool found = false;
    for (const Segment& s : segs) {
      if (cur.offset == s.begin) {
        mapped = GraphPoint::at_vertex(s.begin_vertex);
        found = true;
        break;
      }
      if (cur.offset == s.end) {
        mapped = GraphPoint::at_vertex(s.end_vertex);
        found = true;
        break;
      }
      if (cur.offset > s.begin && cur.offset < s.end) {
        mapped = GraphPoint::on_edge(s.new_edge, cur.offset - s.begin);
        found = true;
        break;
      }
    }
    if (!found) throw PointOffModel("offset " + std::to_string(cur.offset) + " not covered by subdivision of edge " + std::to_string(cur.edge));
    cur = mapped;
  }
  return cur;
}

PointMap PointMap::then(const PointMap& next) const {
  PointMap out = *this;
  out.layers_.insert(out.layers_.end(), next.layers_.begin(), next.layers_.end());
  return out;
}

MetricGraphModel MetricGraphModel::build(const std::vector<VertexId>& vertices,
                                         const std::vector<EdgeSpec>& edges) {
  if (edges.empty()) throw DisconnectedGraph("a metric graph needs at least one edge");

  std::set<VertexId> vset(vertices.begin(), vertices.end());
  std::set<EdgeId> eset;
  VertexId max_v = vertices.empty() ? -1 : *vset.rbegin();
  EdgeId max_e = -1;
  for (const EdgeSpec& e : edges) {
    if (!(e.length > 0.0) || !std::isfinite(e.length))
      throw NonpositiveLength("edge " + std::to_string(e.id) + " has length " + std::to_string(e.length));
    if (!vset.count(e.u) || !vset.count(e.v))
      throw DanglingEndpoint("edge " + std::to_string(e.id) + " references a missing vertex");
    if (!eset.insert(e.id).second)
      throw ParseError("duplicate edge id " + std::to_string(e.id));
    max_e = std::max(max_e, e.id);
  }
  if (vset.size() != vertices.size()) throw ParseError("duplicate vertex id");

  MetricGraphModel m;
  m.vertices_ = std::vector<VertexId>(vset.begin(), vset.end());
  for (const EdgeSpec& e : edges) {
    if (e.u == e.v) {
      // normalize: split each loop at its midpoint
      VertexId w = ++max_v;
      m.vertices_.push_back(w);
      m.edges_.push_back({++max_e, e.u, w, e.length / 2});
      m.edges_.push_back({++max_e, w, e.v, e.length / 2});
    } else {
      m.edges_.push_back(e);
    }
  }

  UnionFind uf;
  for (const EdgeSpec& e : m.edges_) uf.unite(e.u, e.v);
  VertexId root = uf.find(m.vertices_.front());
  for (VertexId v : m.vertices_)
    if (uf.find(v) != root) throw DisconnectedGraph("vertex " + std::to_string(v) + " is not connected");

  m.index();
  return m;
}

void MetricGraphModel::index() {
  vertex_index_.clear();
  edge_index_.clear();
  incident_.clear();
  for (size_t i = 0; i < vertices_.size(); ++i) vertex_index_[vertices_[i]] = static_cast<int>(i);
  for (size_t i = 0; i < edges_.size(); ++i) {
    edge_index_[edges_[i].id] = static_cast<int>(i);
    incident_[edges_[i].u].push_back(static_cast<int>(i));
    incident_[edges_[i].v].push_back(static_cast<int>(i));
  }
}

const EdgeSpec& MetricGraphModel::edge(EdgeId e) const {
  auto it = edge_index_.find(e);
  if (it == edge_index_.end()) throw PointOffModel("no edge with id " + std::to_string(e));
  return edges_[it->second];
}

int MetricGraphModel::vertex_index(VertexId v) const {
  auto it = vertex_index_.find(v);
  if (it == vertex_index_.end()) throw PointOffModel("no vertex with id " + std::to_string(v));
  return it->second;
}

int MetricGraphModel::edge_index(EdgeId e) const {
  auto it = edge_index_.find(e);
  if (it == edge_index_.end()) throw PointOffModel("no edge with id " + std::to_string(e));
  return it->second;
}

double MetricGraphModel::total_length() const {
  double L = 0;
  for (const EdgeSpec& e : edges_) L += e.length;
  return L;
}

int MetricGraphModel::vertex_degree(VertexId v) const {
  vertex_index(v);
  auto it = incident_.find(v);
  return it == incident_.end() ? 0 : static_cast<int>(it->second.size());
}

int MetricGraphModel::degree(const GraphPoint& p) const {
  GraphPoint c = canonicalize(p);
  if (c.is_vertex()) return vertex_degree(c.vertex);
  return 2;
}

GraphPoint MetricGraphModel::canonicalize(GraphPoint p) const {
  if (p.is_vertex()) {
    vertex_index(p.vertex);
    return GraphPoint::at_vertex(p.vertex);
  }
  const EdgeSpec& e = edge(p.edge);
  if (p.offset < 0.0 || p.offset > e.length || !std::isfinite(p.offset))
    throw PointOffModel("offset " + std::to_string(p.offset) + " outside edge " + std::to_string(p.edge) + " of length " + std::to_string(e.length));
  if (p.offset == 0.0) return GraphPoint::at_vertex(e.u);
  if (p.offset == e.length) return GraphPoint::at_vertex(e.v);
  return p;
}

std::pair<MetricGraphModel, PointMap> MetricGraphModel::subdivide_at(
    std::span<const GraphPoint> points) const {
  // interior split offsets per edge
  std::map<EdgeId, std::set<double>> splits;
  for (const GraphPoint& p : points) {
    GraphPoint c = canonicalize(p);
    if (!c.is_vertex()) splits[c.edge].insert(c.offset);
  }

  MetricGraphModel out;
  out.vertices_ = vertices_;
  VertexId max_v = vertices_.empty() ? -1 : *std::max_element(vertices_.begin(), vertices_.end());
  EdgeId max_e = -1;
  for (const EdgeSpec& e : edges_) max_e = std::max(max_e, e.id);

  PointMap map;
  PointMap::Layer layer;

  for (const EdgeSpec& e : edges_) {
    auto it = splits.find(e.id);
    if (it == splits.end()) {
      out.edges_.push_back(e);
      continue;
    }
    std::vector<double> offs(it->second.begin(), it->second.end());
    std::vector<PointMap::Segment> segs;
    double prev = 0.0;
    VertexId prev_vertex = e.u;
    for (double o : offs) {
      VertexId w = ++max_v;
      out.vertices_.push_back(w);
      EdgeId ne = ++max_e;
      out.edges_.push_back({ne, prev_vertex, w, o - prev});
      segs.push_back({prev, o, ne, prev_vertex, w});
      prev = o;
      prev_vertex = w;
    }
    EdgeId ne = ++max_e;
    out.edges_.push_back({ne, prev_vertex, e.v, e.length - prev});
    segs.push_back({prev, e.length, ne, prev_vertex, e.v});
    layer.segments[e.id] = std::move(segs);
  }

  if (!layer.segments.empty()) map.layers_.push_back(std::move(layer));
  out.index();
  return {std::move(out), std::move(map)};
}

std::vector<std::vector<double>> MetricGraphModel::vertex_distance_matrix() const {
  const int n = static_cast<int>(vertices_.size());
  std::vector<std::vector<double>> d(n, std::vector<double>(n, kInf));
  // adjacency with the shortest length among parallel edges
  std::vector<std::vector<std::pair<int, double>>> adj(n);
  for (const EdgeSpec& e : edges_) {
    int iu = vertex_index_.at(e.u), iv = vertex_index_.at(e.v);
    adj[iu].push_back({iv, e.length});
    adj[iv].push_back({iu, e.length});
  }
  for (int s = 0; s < n; ++s) {
    auto& dist = d[s];
    dist[s] = 0;
    using Item = std::pair<double, int>;
    std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
    pq.push({0.0, s});
    while (!pq.empty()) {
      auto [dd, u] = pq.top();
      pq.pop();
      if (dd > dist[u]) continue;
      for (auto [w, len] : adj[u]) {
        if (dist[u] + len < dist[w]) {
          dist[w] = dist[u] + len;
          pq.push({dist[w], w});
        }
      }
    }
  }
  return d;
}

namespace {

// anchors of a point: (vertex index, distance from the point)
std::vector<std::pair<int, double>> anchors(const MetricGraphModel& m, const GraphPoint& c) {
  if (c.is_vertex()) return {{m.vertex_index(c.vertex), 0.0}};
  const EdgeSpec& e = m.edge(c.edge);
  return {{m.vertex_index(e.u), c.offset}, {m.vertex_index(e.v), e.length - c.offset}};
}

}  // namespace

double MetricGraphModel::path_distance(const GraphPoint& x, const GraphPoint& y) const {
  GraphPoint cx = canonicalize(x), cy = canonicalize(y);
  if (cx == cy) return 0.0;

  const int n = static_cast<int>(vertices_.size());
  std::vector<std::vector<std::pair<int, double>>> adj(n);
  for (const EdgeSpec& e : edges_) {
    int iu = vertex_index_.at(e.u), iv = vertex_index_.at(e.v);
    adj[iu].push_back({iv, e.length});
    adj[iv].push_back({iu, e.length});
  }

  std::vector<double> dist(n, kInf);
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  for (auto [v, d0] : anchors(*this, cx)) {
    if (d0 < dist[v]) {
      dist[v] = d0;
      pq.push({d0, v});
    }
  }
  while (!pq.empty()) {
    auto [dd, u] = pq.top();
    pq.pop();
    if (dd > dist[u]) continue;
    for (auto [w, len] : adj[u]) {
      if (dist[u] + len < dist[w]) {
        dist[w] = dist[u] + len;
        pq.push({dist[w], w});
      }
    }
  }

  double best = kInf;
  for (auto [v, d0] : anchors(*this, cy)) best = std::min(best, dist[v] + d0);
  // same-edge direct route
  if (!cx.is_vertex() && !cy.is_vertex() && cx.edge == cy.edge)
    best = std::min(best, std::abs(cx.offset - cy.offset));
  return best;
}

namespace {

// Affine function a + bt + cs of (t, s).
struct Affine {
  double a, b, c;
  double eval(double t, double s) const { return a + b * t + c * s; }
};

// Maximize min_i f_i over the polygon {g_j(t,s) >= 0} by enumerating
// candidate points: pairwise intersections of the equality lines f_i = f_j
// and the polygon boundary lines g_j = 0. The objective is concave
// piecewise-affine, so its maximum lies on such an intersection.
struct PolyMax {
  double value = -kInf;
  double t = 0, s = 0;
};

PolyMax maximize_min_affine(const std::vector<Affine>& fs, const std::vector<Affine>& gs) {
  std::vector<Affine> lines;  // homogeneous form: a + bt + cs = 0
  for (size_t i = 0; i < fs.size(); ++i)
    for (size_t j = i + 1; j < fs.size(); ++j)
      lines.push_back({fs[i].a - fs[j].a, fs[i].b - fs[j].b, fs[i].c - fs[j].c});
  for (const Affine& g : gs) lines.push_back(g);

  const double eps = 1e-12;
  PolyMax best;
  auto consider = [&](double t, double s) {
    for (const Affine& g : gs)
      if (g.eval(t, s) < -1e-9) return;
    double v = kInf;
    for (const Affine& f : fs) v = std::min(v, f.eval(t, s));
    if (v > best.value) best = {v, t, s};
  };

  for (size_t i = 0; i < lines.size(); ++i) {
    for (size_t j = i + 1; j < lines.size(); ++j) {
      const Affine &p = lines[i], &q = lines[j];
      double det = p.b * q.c - p.c * q.b;
      if (std::abs(det) < eps) continue;
      double t = (-p.a * q.c + q.a * p.c) / det;
      double s = (-p.b * q.a + q.b * p.a) / det;
      consider(t, s);
    }
  }
  return best;
}

}  // namespace

std::tuple<double, GraphPoint, GraphPoint> MetricGraphModel::rho_diameter() const {
  auto D = vertex_distance_matrix();
  double best = -1;
  GraphPoint bx, by;

  // intersection arithmetic can leave a boundary point 1 ulp inside the edge
  auto snap = [&](GraphPoint p) {
    double l = edge(p.edge).length;
    if (p.offset < 1e-9 * l) p.offset = 0.0;
    if (p.offset > (1 - 1e-9) * l) p.offset = l;
    return p;
  };
  auto record = [&](double v, GraphPoint x, GraphPoint y) {
    x = canonicalize(snap(x));
    y = canonicalize(snap(y));
    auto kx = sort_key(x), ky = sort_key(y);
    if (ky < kx) {
      std::swap(x, y);
      std::swap(kx, ky);
    }
    if (v > best + 1e-15 * std::max(1.0, best)) {
      best = v;
      bx = x;
      by = y;
    } else if (std::abs(v - best) <= 1e-12 * std::max(1.0, best)) {
      auto cur = std::make_pair(sort_key(bx), sort_key(by));
      if (std::make_pair(kx, ky) < cur) {
        bx = x;
        by = y;
      }
    }
  };

  for (const EdgeSpec& e1 : edges_) {
    for (const EdgeSpec& e2 : edges_) {
      if (e2.id < e1.id) continue;
      int u1 = vertex_index_.at(e1.u), v1 = vertex_index_.at(e1.v);
      int u2 = vertex_index_.at(e2.u), v2 = vertex_index_.at(e2.v);
      if (e1.id == e2.id) {
        // rho(x_t, x_s) = min(s - t, t + D(u,v) + l - s) on the triangle t <= s
        std::vector<Affine> fs = {{0, -1, 1}, {D[u1][v1] + e1.length, 1, -1}};
        std::vector<Affine> gs = {{0, 1, 0}, {e1.length, 0, -1}, {0, -1, 1}};
        PolyMax r = maximize_min_affine(fs, gs);
        record(r.value, GraphPoint::on_edge(e1.id, std::clamp(r.t, 0.0, e1.length)),
               GraphPoint::on_edge(e1.id, std::clamp(r.s, 0.0, e1.length)));
      } else {
        std::vector<Affine> fs = {
            {D[u1][u2], 1, 1},
            {D[u1][v2] + e2.length, 1, -1},
            {D[v1][u2] + e1.length, -1, 1},
            {D[v1][v2] + e1.length + e2.length, -1, -1},
        };
        std::vector<Affine> gs = {
            {0, 1, 0}, {e1.length, -1, 0}, {0, 0, 1}, {e2.length, 0, -1}};
        PolyMax r = maximize_min_affine(fs, gs);
        record(r.value, GraphPoint::on_edge(e1.id, std::clamp(r.t, 0.0, e1.length)),
               GraphPoint::on_edge(e2.id, std::clamp(r.s, 0.0, e2.length)));
      }
    }
  }
  return {best, bx, by};
}

std::pair<EdgeId, double> MetricGraphModel::sort_key(const GraphPoint& p) const {
  GraphPoint c = canonicalize(p);
  if (!c.is_vertex()) return {c.edge, c.offset};
  std::pair<EdgeId, double> best{std::numeric_limits<EdgeId>::max(), 0.0};
  auto it = incident_.find(c.vertex);
  if (it != incident_.end()) {
    for (int ei : it->second) {
      const EdgeSpec& e = edges_[ei];
      std::pair<EdgeId, double> k{e.id, e.u == c.vertex ? 0.0 : e.length};
      best = std::min(best, k);
    }
  }
  return best;
}

}  // namespace mgs

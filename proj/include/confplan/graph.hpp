#pragma once

#include <algorithm>
#include <cstddef>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "confplan/error.hpp"
#include "confplan/rational.hpp"

namespace confplan {

/// A point of a metric graph: a vertex, or a position strictly inside an edge.
///
/// `t` is the fraction of the edge length measured from the edge's first endpoint. Points are
/// kept canonical, so an endpoint position is always a vertex and equality is structural.
class GraphPoint {
 public:
  GraphPoint() = default;

  static GraphPoint at_vertex(std::size_t v) { return GraphPoint(v, true, Rational(0)); }

  static GraphPoint interior(std::size_t e, Rational t) {
    t.canonicalize();
    if (t <= 0 || t >= 1) throw Error(Errc::InvalidArgument, "interior edge parameter must lie in (0,1)");
    return GraphPoint(e, false, std::move(t));
  }

  bool is_vertex() const { return is_vertex_; }
  std::size_t vertex() const { return index_; }
  std::size_t edge() const { return index_; }
  const Rational& t() const { return t_; }

  friend bool operator==(const GraphPoint& a, const GraphPoint& b) {
    return a.is_vertex_ == b.is_vertex_ && a.index_ == b.index_ && (a.is_vertex_ || a.t_ == b.t_);
  }
  friend bool operator!=(const GraphPoint& a, const GraphPoint& b) { return !(a == b); }

  /// Arbitrary but total order, used for deterministic containers.
  friend bool operator<(const GraphPoint& a, const GraphPoint& b) {
    if (a.is_vertex_ != b.is_vertex_) return a.is_vertex_;
    if (a.index_ != b.index_) return a.index_ < b.index_;
    return !a.is_vertex_ && a.t_ < b.t_;
  }

 private:
  GraphPoint(std::size_t index, bool is_vertex, Rational t) : index_(index), is_vertex_(is_vertex), t_(std::move(t)) {}

  std::size_t index_ = 0;
  bool is_vertex_ = true;
  Rational t_;
};

/// Ordered tuple of agent positions; an element of F(G, n) once validated.
using Configuration = std::vector<GraphPoint>;

struct Edge {
  std::string id;
  std::size_t u = 0;
  std::size_t v = 0;
  Rational length{1};
};

struct EdgeSpec {
  std::string id;
  std::string u;
  std::string v;
  Rational length{1};
};

/// Finite connected simple metric graph. Vertices and edges are indexed in lexicographic id order.
class Graph {
 public:
  Graph(std::vector<std::string> vertex_ids, std::vector<EdgeSpec> edge_specs) {
    if (vertex_ids.empty()) throw Error(Errc::ValidationError, "graph has no vertices");
    std::sort(vertex_ids.begin(), vertex_ids.end());
    if (std::adjacent_find(vertex_ids.begin(), vertex_ids.end()) != vertex_ids.end())
      throw Error(Errc::ValidationError, "duplicate vertex id");
    vertex_ids_ = std::move(vertex_ids);

    std::sort(edge_specs.begin(), edge_specs.end(), [](const EdgeSpec& a, const EdgeSpec& b) { return a.id < b.id; });
    std::set<std::pair<std::size_t, std::size_t>> seen_pairs;
    for (std::size_t i = 0; i < edge_specs.size(); ++i) {
      auto& spec = edge_specs[i];
      if (i > 0 && edge_specs[i - 1].id == spec.id) throw Error(Errc::ValidationError, "duplicate edge id '" + spec.id + "'");
      const auto u = find_vertex(spec.u);
      const auto v = find_vertex(spec.v);
      if (!u || !v) throw Error(Errc::ValidationError, "edge '" + spec.id + "' has an unknown endpoint");
      if (*u == *v) throw Error(Errc::ValidationError, "self-loop on edge '" + spec.id + "'");
      if (spec.length <= 0) throw Error(Errc::ValidationError, "edge '" + spec.id + "' has nonpositive length");
      if (!seen_pairs.insert(std::minmax(*u, *v)).second)
        throw Error(Errc::ValidationError, "parallel edge '" + spec.id + "'");
      edges_.push_back(Edge{std::move(spec.id), *u, *v, std::move(spec.length)});
    }

    incident_.assign(vertex_ids_.size(), {});
    for (std::size_t e = 0; e < edges_.size(); ++e) {
      incident_[edges_[e].u].push_back(e);
      incident_[edges_[e].v].push_back(e);
    }
    if (!is_connected()) throw Error(Errc::ValidationError, "graph is disconnected");
    distances_ = std::make_shared<DistanceCache>();
  }

  std::size_t vertex_count() const { return vertex_ids_.size(); }
  std::size_t edge_count() const { return edges_.size(); }
  const std::string& vertex_id(std::size_t v) const { return vertex_ids_.at(v); }
  const std::vector<std::string>& vertex_ids() const { return vertex_ids_; }
  const Edge& edge(std::size_t e) const { return edges_.at(e); }
  const std::vector<Edge>& edges() const { return edges_; }

  std::optional<std::size_t> find_vertex(std::string_view id) const {
    auto it = std::lower_bound(vertex_ids_.begin(), vertex_ids_.end(), id);
    if (it == vertex_ids_.end() || *it != id) return std::nullopt;
    return static_cast<std::size_t>(it - vertex_ids_.begin());
  }

  std::optional<std::size_t> find_edge(std::string_view id) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), id, [](const Edge& e, std::string_view key) { return e.id < key; });
    if (it == edges_.end() || it->id != id) return std::nullopt;
    return static_cast<std::size_t>(it - edges_.begin());
  }

  /// Incident edges of `v`, in edge-id order.
  const std::vector<std::size_t>& incident_edges(std::size_t v) const { return incident_.at(v); }
  std::size_t degree(std::size_t v) const { return incident_.at(v).size(); }

  std::size_t other_end(std::size_t e, std::size_t v) const {
    const Edge& ed = edges_.at(e);
    return ed.u == v ? ed.v : ed.u;
  }

  std::optional<std::size_t> edge_between(std::size_t a, std::size_t b) const {
    for (std::size_t e : incident_.at(a))
      if (other_end(e, a) == b) return e;
    return std::nullopt;
  }

  const Rational& shortest_edge_length() const {
    static const Rational zero(0);
    if (edges_.empty()) return zero;
    return std::min_element(edges_.begin(), edges_.end(), [](const Edge& a, const Edge& b) { return a.length < b.length; })
        ->length;
  }

  /// Canonical point at parameter `t` in [0,1] of edge `e` (endpoints collapse to vertices).
  GraphPoint point(std::size_t e, const Rational& t) const {
    const Edge& ed = edges_.at(e);
    if (t < 0 || t > 1) throw Error(Errc::PointNotOnGraph, "edge parameter outside [0,1]");
    if (t == 0) return GraphPoint::at_vertex(ed.u);
    if (t == 1) return GraphPoint::at_vertex(ed.v);
    return GraphPoint::interior(e, t);
  }

  void check_point(const GraphPoint& p) const {
    if (p.is_vertex() ? p.vertex() >= vertex_count() : p.edge() >= edge_count())
      throw Error(Errc::PointNotOnGraph, "point references a missing vertex or edge");
    if (!p.is_vertex() && (p.t() <= 0 || p.t() >= 1)) throw Error(Errc::PointNotOnGraph, "non-canonical edge point");
  }

  bool on_closure(const GraphPoint& p, std::size_t e) const {
    if (!p.is_vertex()) return p.edge() == e;
    return edges_[e].u == p.vertex() || edges_[e].v == p.vertex();
  }

  /// Parameter of `p` along edge `e`; `p` must lie on the closed edge.
  Rational coordinate(const GraphPoint& p, std::size_t e) const {
    if (!p.is_vertex()) {
      if (p.edge() != e) throw Error(Errc::PointNotOnGraph, "point is not on the requested edge");
      return p.t();
    }
    if (edges_[e].u == p.vertex()) return Rational(0);
    if (edges_[e].v == p.vertex()) return Rational(1);
    throw Error(Errc::PointNotOnGraph, "vertex is not an endpoint of the requested edge");
  }

  /// An edge whose closure holds both points. Two equal vertices report their first incident edge.
  std::optional<std::size_t> common_edge(const GraphPoint& p, const GraphPoint& q) const {
    if (!p.is_vertex()) return on_closure(q, p.edge()) ? std::optional<std::size_t>(p.edge()) : std::nullopt;
    if (!q.is_vertex()) return on_closure(p, q.edge()) ? std::optional<std::size_t>(q.edge()) : std::nullopt;
    if (p.vertex() == q.vertex()) {
      if (incident_[p.vertex()].empty()) return std::nullopt;
      return incident_[p.vertex()].front();
    }
    return edge_between(p.vertex(), q.vertex());
  }

  /// Shortest-path distance between two vertices (computed once per graph, thread safe).
  const Rational& vertex_distance(std::size_t a, std::size_t b) const {
    std::call_once(distances_->once, [this] { fill_distances(); });
    return distances_->table[a * vertex_count() + b];
  }

 private:
  struct DistanceCache {
    std::once_flag once;
    std::vector<Rational> table;
  };

  bool is_connected() const {
    std::vector<char> seen(vertex_count(), 0);
    std::vector<std::size_t> stack{0};
    seen[0] = 1;
    std::size_t count = 1;
    while (!stack.empty()) {
      const std::size_t v = stack.back();
      stack.pop_back();
      for (std::size_t e : incident_[v]) {
        const std::size_t w = other_end(e, v);
        if (!seen[w]) {
          seen[w] = 1;
          ++count;
          stack.push_back(w);
        }
      }
    }
    return count == vertex_count();
  }

  void fill_distances() const {
    const std::size_t n = vertex_count();
    auto& table = distances_->table;
    table.assign(n * n, Rational(0));
    for (std::size_t s = 0; s < n; ++s) {
      std::vector<Rational> dist(n);
      std::vector<char> known(n, 0), reached(n, 0);
      reached[s] = 1;
      for (std::size_t round = 0; round < n; ++round) {
        std::size_t best = n;
        for (std::size_t v = 0; v < n; ++v)
          if (reached[v] && !known[v] && (best == n || dist[v] < dist[best])) best = v;
        if (best == n) break;
        known[best] = 1;
        for (std::size_t e : incident_[best]) {
          const std::size_t w = other_end(e, best);
          Rational candidate = dist[best] + edges_[e].length;
          if (!reached[w] || candidate < dist[w]) {
            dist[w] = std::move(candidate);
            reached[w] = 1;
          }
        }
      }
      for (std::size_t v = 0; v < n; ++v) table[s * n + v] = dist[v];
    }
  }

  std::vector<std::string> vertex_ids_;
  std::vector<Edge> edges_;
  std::vector<std::vector<std::size_t>> incident_;
  std::shared_ptr<DistanceCache> distances_;
};

/// Vertices of degree >= 3, in id order. Their count is m(G).
inline std::vector<std::size_t> essential_vertices(const Graph& g) {
  std::vector<std::size_t> out;
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) >= 3) out.push_back(v);
  return out;
}

inline std::size_t essential_count(const Graph& g) { return essential_vertices(g).size(); }

inline std::size_t first_betti(const Graph& g) { return g.edge_count() + 1 - g.vertex_count(); }

inline bool is_tree(const Graph& g) { return g.edge_count() + 1 == g.vertex_count(); }

/// Replaces each edge by a path of `k` equal pieces. Interior vertices are named "<edge>#<i>",
/// counted from the edge's first endpoint, and the pieces "<edge>#<i>" for i = 1..k.
inline Graph subdivide(const Graph& g, std::size_t k) {
  if (k == 0) throw Error(Errc::InvalidArgument, "subdivision factor must be positive");
  if (k == 1) return g;
  std::vector<std::string> vertices = g.vertex_ids();
  std::vector<EdgeSpec> edges;
  for (const Edge& e : g.edges()) {
    std::string prev = g.vertex_id(e.u);
    for (std::size_t i = 1; i <= k; ++i) {
      std::string next = i == k ? g.vertex_id(e.v) : e.id + "#" + std::to_string(i);
      if (i < k) {
        if (g.find_vertex(next)) throw Error(Errc::ValidationError, "subdivision name clash on '" + next + "'");
        vertices.push_back(next);
      }
      edges.push_back(EdgeSpec{e.id + "#" + std::to_string(i), prev, next, e.length / Rational(static_cast<long>(k))});
      prev = std::move(next);
    }
  }
  return Graph(std::move(vertices), std::move(edges));
}

namespace detail {

struct EndDistance {
  std::size_t vertex;
  Rational distance;
};

inline std::vector<EndDistance> exits(const Graph& g, const GraphPoint& p) {
  if (p.is_vertex()) return {EndDistance{p.vertex(), Rational(0)}};
  const Edge& e = g.edge(p.edge());
  return {EndDistance{e.u, p.t() * e.length}, EndDistance{e.v, (1 - p.t()) * e.length}};
}

}  // namespace detail

/// Shortest-path metric between two points of the graph.
inline Rational graph_distance(const Graph& g, const GraphPoint& x, const GraphPoint& y) {
  g.check_point(x);
  g.check_point(y);
  if (x == y) return Rational(0);
  std::optional<Rational> best;
  if (auto e = g.common_edge(x, y); e && !(x.is_vertex() && y.is_vertex() && x.vertex() == y.vertex())) {
    best = abs_value(g.coordinate(x, *e) - g.coordinate(y, *e)) * g.edge(*e).length;
  }
  for (const auto& ex : detail::exits(g, x)) {
    for (const auto& ey : detail::exits(g, y)) {
      Rational d = ex.distance + g.vertex_distance(ex.vertex, ey.vertex) + ey.distance;
      if (!best || d < *best) best = std::move(d);
    }
  }
  return *best;
}

/// Throws unless every point is on `g` and the points are pairwise distinct.
inline void validate_configuration(const Graph& g, const Configuration& c) {
  for (const auto& p : c) g.check_point(p);
  std::vector<GraphPoint> sorted(c.begin(), c.end());
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw Error(Errc::ValidationError, "configuration has two agents at the same point");
}

}  // namespace confplan

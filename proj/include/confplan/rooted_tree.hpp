#pragma once

#include <string_view>
#include <vector>

#include "confplan/graph.hpp"

namespace confplan {

/// A tree with a distinguished univalent root u0 and root edge e0.
///
/// Every non-root vertex has exactly one descending edge (towards the root); its other incident
/// edges are ascending. Heights are exact distances to the root, so points can be compared along
/// the partial order x > y ("every path from x to the root passes through y").
class RootedTree {
 public:
  RootedTree(Graph graph, std::size_t root) : graph_(std::move(graph)), root_(root) {
    if (!is_tree(graph_)) throw Error(Errc::NotATree, "graph has a cycle");
    if (root_ >= graph_.vertex_count()) throw Error(Errc::ValidationError, "root is not a vertex");
    if (graph_.degree(root_) != 1) throw Error(Errc::RootNotUnivalent, "root '" + graph_.vertex_id(root_) + "' must have degree 1");

    const std::size_t n = graph_.vertex_count();
    parent_.assign(n, kNone);
    parent_edge_.assign(n, kNone);
    depth_.assign(n, 0);
    height_.assign(n, Rational(0));
    enter_.assign(n, 0);
    leave_.assign(n, 0);
    ascending_.assign(n, {});

    // Iterative DFS for ancestor intervals.
    std::size_t clock = 0;
    std::vector<std::pair<std::size_t, std::size_t>> stack{{root_, 0}};
    enter_[root_] = clock++;
    while (!stack.empty()) {
      auto& [v, next] = stack.back();
      const auto& inc = graph_.incident_edges(v);
      if (next < inc.size()) {
        const std::size_t e = inc[next++];
        const std::size_t w = graph_.other_end(e, v);
        if (w == parent_[v]) continue;
        parent_[w] = v;
        parent_edge_[w] = e;
        depth_[w] = depth_[v] + 1;
        height_[w] = height_[v] + graph_.edge(e).length;
        ascending_[v].push_back(e);
        enter_[w] = clock++;
        stack.emplace_back(w, 0);
      } else {
        leave_[v] = clock++;
        stack.pop_back();
      }
    }
    root_edge_ = graph_.incident_edges(root_).front();
    root_child_ = graph_.other_end(root_edge_, root_);
  }

  static constexpr std::size_t kNone = static_cast<std::size_t>(-1);

  const Graph& graph() const { return graph_; }
  std::size_t root() const { return root_; }
  std::size_t root_edge() const { return root_edge_; }
  /// Upper endpoint w0 of the root edge.
  std::size_t root_child() const { return root_child_; }

  std::size_t parent(std::size_t v) const { return parent_.at(v); }
  /// Edge from `v` towards the root; kNone for the root itself.
  std::size_t descending_edge(std::size_t v) const { return parent_edge_.at(v); }
  /// Incident edges of `v` pointing away from the root, in edge-id order.
  const std::vector<std::size_t>& ascending_edges(std::size_t v) const { return ascending_.at(v); }
  const Rational& height(std::size_t v) const { return height_.at(v); }

  /// Lower (root-side) and upper endpoints of edge `e`.
  std::size_t lower_end(std::size_t e) const {
    const Edge& ed = graph_.edge(e);
    return parent_[ed.v] == ed.u && parent_edge_[ed.v] == e ? ed.u : ed.v;
  }
  std::size_t upper_end(std::size_t e) const { return graph_.other_end(e, lower_end(e)); }

  /// True when `a` is `d` or lies on the path from `d` to the root.
  bool is_ancestor(std::size_t a, std::size_t d) const { return enter_[a] <= enter_[d] && leave_[d] <= leave_[a]; }

  std::size_t lca(std::size_t a, std::size_t b) const {
    while (depth_[a] > depth_[b]) a = parent_[a];
    while (depth_[b] > depth_[a]) b = parent_[b];
    while (a != b) {
      a = parent_[a];
      b = parent_[b];
    }
    return a;
  }

  /// The vertex a point hangs below: itself, or the upper endpoint of its edge.
  std::size_t anchor(const GraphPoint& p) const { return p.is_vertex() ? p.vertex() : upper_end(p.edge()); }

  /// Distance from the point to the root.
  Rational height(const GraphPoint& p) const {
    if (p.is_vertex()) return height_.at(p.vertex());
    return height_[lower_end(p.edge())] + distance_from_lower(p);
  }

  /// Distance from the lower endpoint of the point's edge.
  Rational distance_from_lower(const GraphPoint& p) const {
    const Edge& ed = graph_.edge(p.edge());
    return (lower_end(p.edge()) == ed.u ? p.t() : Rational(1 - p.t())) * ed.length;
  }

  /// Point of edge `e` at fraction `s` of its length measured from the lower endpoint.
  GraphPoint point_from_lower(std::size_t e, const Rational& s) const {
    return graph_.point(e, lower_end(e) == graph_.edge(e).u ? s : Rational(1 - s));
  }

  /// Point of edge `e` at fraction `s` measured from endpoint `from`.
  GraphPoint point_from(std::size_t e, std::size_t from, const Rational& s) const {
    return graph_.point(e, graph_.edge(e).u == from ? s : Rational(1 - s));
  }

  /// x > y: y lies on the path from x to the root and x != y.
  bool precedes(const GraphPoint& x, const GraphPoint& y) const {
    graph_.check_point(x);
    graph_.check_point(y);
    if (x == y) return false;
    const std::size_t a = anchor(x);
    if (y.is_vertex()) return y.vertex() != a && is_ancestor(y.vertex(), a);
    const std::size_t c = anchor(y);
    if (c != a) return is_ancestor(c, a);
    return x.is_vertex() || height(y) < height(x);
  }

  Rational distance(const GraphPoint& x, const GraphPoint& y) const { return graph_distance(graph_, x, y); }

  /// Breakpoints of the geodesic from x to y: x, every vertex crossed, y. Consecutive entries
  /// share a closed edge. A single entry when x == y.
  std::vector<GraphPoint> route(const GraphPoint& x, const GraphPoint& y) const {
    graph_.check_point(x);
    graph_.check_point(y);
    if (x == y) return {x};
    if (graph_.common_edge(x, y)) return {x, y};

    std::size_t best_x = 0, best_y = 0;
    Rational best;
    bool have = false;
    for (const auto& ex : detail::exits(graph_, x)) {
      for (const auto& ey : detail::exits(graph_, y)) {
        Rational d = ex.distance + vertex_distance(ex.vertex, ey.vertex) + ey.distance;
        if (!have || d < best) {
          best = std::move(d);
          best_x = ex.vertex;
          best_y = ey.vertex;
          have = true;
        }
      }
    }
    std::vector<GraphPoint> out{x};
    for (std::size_t v : vertex_path(best_x, best_y)) {
      GraphPoint vp = GraphPoint::at_vertex(v);
      if (vp != out.back()) out.push_back(vp);
    }
    if (y != out.back()) out.push_back(y);
    return out;
  }

  /// Vertices on the tree path from a to b, inclusive.
  std::vector<std::size_t> vertex_path(std::size_t a, std::size_t b) const {
    const std::size_t top = lca(a, b);
    std::vector<std::size_t> up, down;
    for (std::size_t v = a; v != top; v = parent_[v]) up.push_back(v);
    up.push_back(top);
    for (std::size_t v = b; v != top; v = parent_[v]) down.push_back(v);
    up.insert(up.end(), down.rbegin(), down.rend());
    return up;
  }

  Rational vertex_distance(std::size_t a, std::size_t b) const {
    return height_[a] + height_[b] - 2 * height_[lca(a, b)];
  }

 private:
  Graph graph_;
  std::size_t root_;
  std::size_t root_edge_ = 0;
  std::size_t root_child_ = 0;
  std::vector<std::size_t> parent_;
  std::vector<std::size_t> parent_edge_;
  std::vector<std::size_t> depth_;
  std::vector<Rational> height_;
  std::vector<std::size_t> enter_;
  std::vector<std::size_t> leave_;
  std::vector<std::vector<std::size_t>> ascending_;
};

inline RootedTree root_tree(const Graph& g, std::string_view root_id) {
  if (!is_tree(g)) throw Error(Errc::NotATree, "graph has a cycle");
  const auto root = g.find_vertex(root_id);
  if (!root) throw Error(Errc::ValidationError, "unknown root vertex '" + std::string(root_id) + "'");
  return RootedTree(g, *root);
}

}  // namespace confplan

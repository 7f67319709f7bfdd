#pragma once

#include <algorithm>
#include <map>
#include <numeric>
#include <vector>

#include "confplan/graph.hpp"

namespace confplan {

/// Discretized configuration complex of a subdivided graph.
///
/// Cell ids of the subdivided graph: vertices are 0..V-1, the closed edge e is V+e. A d-cell is an
/// n-tuple of cell ids with pairwise disjoint closures, exactly d of them edges. The unordered
/// variant keeps only strictly increasing tuples.
class DiscreteConfigComplex {
 public:
  DiscreteConfigComplex(Graph subdivided, std::size_t n, bool ordered)
      : graph_(std::move(subdivided)), n_(n), ordered_(ordered), cells_(n + 1) {
    std::vector<std::size_t> tuple;
    tuple.reserve(n_);
    enumerate(tuple, 0);
  }

  const Graph& graph() const { return graph_; }
  std::size_t agents() const { return n_; }
  bool ordered() const { return ordered_; }
  std::size_t dimension() const { return n_; }

  std::size_t cell_count(std::size_t d) const { return d < cells_.size() ? cells_[d].size() / n_ : 0; }
  std::size_t total_cells() const {
    std::size_t s = 0;
    for (std::size_t d = 0; d <= n_; ++d) s += cell_count(d);
    return s;
  }

  /// Constituent ids of the i-th cell of dimension d.
  std::vector<std::size_t> cell(std::size_t d, std::size_t i) const {
    const auto first = cells_.at(d).begin() + static_cast<std::ptrdiff_t>(i * n_);
    return {first, first + static_cast<std::ptrdiff_t>(n_)};
  }

  bool is_edge_cell(std::size_t id) const { return id >= graph_.vertex_count(); }

  /// Endpoints of a constituent (one entry for a vertex, two for an edge).
  std::vector<std::size_t> closure(std::size_t id) const {
    if (!is_edge_cell(id)) return {id};
    const Edge& e = graph_.edge(id - graph_.vertex_count());
    return {e.u, e.v};
  }

  long long euler_characteristic() const {
    long long chi = 0;
    for (std::size_t d = 0; d <= n_; ++d) chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(cell_count(d));
    return chi;
  }

 private:
  bool disjoint(std::size_t a, std::size_t b) const {
    for (std::size_t x : closure(a))
      for (std::size_t y : closure(b))
        if (x == y) return false;
    return true;
  }

  void enumerate(std::vector<std::size_t>& tuple, std::size_t edges) {
    if (tuple.size() == n_) {
      cells_[edges].insert(cells_[edges].end(), tuple.begin(), tuple.end());
      return;
    }
    const std::size_t total = graph_.vertex_count() + graph_.edge_count();
    const std::size_t start = ordered_ || tuple.empty() ? 0 : tuple.back() + 1;
    for (std::size_t id = start; id < total; ++id) {
      bool ok = true;
      for (std::size_t other : tuple)
        if (!disjoint(id, other)) {
          ok = false;
          break;
        }
      if (!ok) continue;
      tuple.push_back(id);
      enumerate(tuple, edges + (is_edge_cell(id) ? 1 : 0));
      tuple.pop_back();
    }
  }

  Graph graph_;
  std::size_t n_;
  bool ordered_;
  std::vector<std::vector<std::size_t>> cells_;
};

/// Complex of `n` agents on `g` with each edge cut into `subdivision` pieces.
inline DiscreteConfigComplex build_complex(const Graph& g, std::size_t n, std::size_t subdivision, bool ordered) {
  if (n < 1) throw Error(Errc::InvalidArgument, "need at least one agent");
  if (subdivision < n + 1)
    throw Error(Errc::SubdivisionTooCoarse,
                "subdivision " + std::to_string(subdivision) + " is below n+1 = " + std::to_string(n + 1));
  return DiscreteConfigComplex(subdivide(g, subdivision), n, ordered);
}

/// Components of the 1-skeleton.
inline std::size_t connected_components(const DiscreteConfigComplex& c) {
  std::map<std::vector<std::size_t>, std::size_t> index;
  for (std::size_t i = 0; i < c.cell_count(0); ++i) index.emplace(c.cell(0, i), i);

  std::vector<std::size_t> parent(index.size());
  std::iota(parent.begin(), parent.end(), std::size_t{0});
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  std::size_t components = index.size();

  for (std::size_t i = 0; i < c.cell_count(1); ++i) {
    const auto cell = c.cell(1, i);
    std::size_t slot = 0;
    while (!c.is_edge_cell(cell[slot])) ++slot;
    std::size_t ends[2];
    const auto cl = c.closure(cell[slot]);
    for (int s = 0; s < 2; ++s) {
      auto face = cell;
      face[slot] = cl[static_cast<std::size_t>(s)];
      if (!c.ordered()) std::sort(face.begin(), face.end());
      const auto it = index.find(face);
      if (it == index.end()) throw Error(Errc::InvariantViolation, "face of a 1-cell is not a 0-cell");
      ends[s] = find(it->second);
    }
    if (ends[0] != ends[1]) {
      parent[ends[0]] = ends[1];
      --components;
    }
  }
  return components;
}

/// 1 - chi. Only claimed where the complex is homotopy equivalent to a graph: trees with n <= 2.
/// (With cycles, b2 can be nonzero; the ordered complex of K5 at n = 2 is a closed surface.)
inline long long betti1_via_euler(const DiscreteConfigComplex& c) {
  if (c.agents() > 2) throw Error(Errc::InvalidArgument, "first Betti number via Euler characteristic is only claimed for n <= 2");
  if (first_betti(c.graph()) != 0) throw Error(Errc::InvalidArgument, "first Betti number via Euler characteristic is only claimed for trees");
  const std::size_t comps = connected_components(c);
  if (comps != 1) throw Error(Errc::NotConnected, "complex has " + std::to_string(comps) + " components");
  return 1 - c.euler_characteristic();
}

}  // namespace confplan

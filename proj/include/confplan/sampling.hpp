#pragma once

#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "confplan/rooted_tree.hpp"

namespace confplan {

/// mt19937_64 with portable draws (the standard distributions are implementation-defined).
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  /// Uniform integer in [lo, hi].
  std::uint64_t between(std::uint64_t lo, std::uint64_t hi) {
    const std::uint64_t span = hi - lo + 1;
    if (span == 0) return engine_();
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % span;
    std::uint64_t x;
    do x = engine_();
    while (x >= limit);
    return lo + x % span;
  }

  std::size_t index(std::size_t size) { return static_cast<std::size_t>(between(0, size - 1)); }

  /// True with probability num/den.
  bool chance(std::uint64_t num, std::uint64_t den) { return between(1, den) <= num; }

  /// Rational k/den with k uniform in [lo, hi].
  Rational fraction(long lo, long hi, long den) {
    return ratio(lo + static_cast<long>(between(0, static_cast<std::uint64_t>(hi - lo))), den);
  }

 private:
  std::mt19937_64 engine_;
};

struct TreeShape {
  std::size_t essential = 1;
  /// Chance (percent) that an edge is split by a degree-2 vertex.
  unsigned subdivide_percent = 20;
  unsigned max_degree = 5;
  bool varied_lengths = true;
};

/// Random tree rooted at the leaf "r" with exactly `shape.essential` vertices of degree >= 3.
inline RootedTree random_tree(Rng& rng, const TreeShape& shape) {
  std::vector<std::string> vertices{"r"};
  std::vector<EdgeSpec> edges;
  std::size_t next_edge = 0, next_mid = 0, next_leaf = 0;
  auto length = [&] {
    static const Rational choices[] = {Rational(1), Rational(1), ratio(1, 2), ratio(3, 2), Rational(2)};
    return shape.varied_lengths ? choices[rng.index(5)] : Rational(1);
  };
  auto connect = [&](const std::string& a, const std::string& b) {
    std::string from = a;
    if (rng.chance(shape.subdivide_percent, 100)) {
      const std::string mid = "d" + std::to_string(++next_mid);
      vertices.push_back(mid);
      edges.push_back(EdgeSpec{"e" + std::to_string(++next_edge), from, mid, length()});
      from = mid;
    }
    edges.push_back(EdgeSpec{"e" + std::to_string(++next_edge), from, b, length()});
  };

  std::vector<std::string> hubs;
  std::vector<unsigned> degree;
  for (std::size_t i = 0; i < shape.essential; ++i) {
    const std::string h = "h" + std::to_string(i + 1);
    vertices.push_back(h);
    if (i == 0) {
      connect("r", h);
      degree.push_back(1);
    } else {
      const std::size_t j = rng.index(hubs.size());
      connect(hubs[j], h);
      ++degree[j];
      degree.push_back(1);
    }
    hubs.push_back(h);
  }
  for (std::size_t i = 0; i < hubs.size(); ++i) {
    const unsigned target = 3 + static_cast<unsigned>(rng.between(0, shape.max_degree - 3));
    while (degree[i] < target) {
      const std::string leaf = "l" + std::to_string(++next_leaf);
      vertices.push_back(leaf);
      connect(hubs[i], leaf);
      ++degree[i];
    }
  }
  return root_tree(Graph(vertices, edges), "r");
}

struct PlacementMix {
  /// Percent chances, checked in order; the rest are interior points.
  unsigned essential_vertex = 15;
  unsigned other_vertex = 10;
  unsigned near_essential = 0;
  /// Near placements sit at a distance in [near_lo, near_hi] from an essential vertex.
  Rational near_lo{0};
  Rational near_hi{0};
  /// Interior points avoid the outer `margin` fraction of their edge.
  Rational margin = ratio(1, 10);
  /// Minimum pairwise graph distance; zero only asks for distinct points.
  Rational min_gap{0};
};

namespace detail {

inline GraphPoint sample_point(const RootedTree& t, Rng& rng, const PlacementMix& mix, const std::vector<std::size_t>& essential) {
  const Graph& g = t.graph();
  const auto roll = rng.between(1, 100);
  if (roll <= mix.essential_vertex) return GraphPoint::at_vertex(essential[rng.index(essential.size())]);
  if (roll <= mix.essential_vertex + mix.other_vertex) return GraphPoint::at_vertex(rng.index(g.vertex_count()));
  if (roll <= mix.essential_vertex + mix.other_vertex + mix.near_essential) {
    const std::size_t v = essential[rng.index(essential.size())];
    const auto& inc = g.incident_edges(v);
    const std::size_t e = inc[rng.index(inc.size())];
    const Rational d = mix.near_lo + (mix.near_hi - mix.near_lo) * rng.fraction(0, 1000, 1000);
    return t.point_from(e, v, d / g.edge(e).length);
  }
  const std::size_t e = rng.index(g.edge_count());
  const Rational s = mix.margin + (1 - 2 * mix.margin) * rng.fraction(0, 1000, 1000);
  return g.point(e, s);
}

}  // namespace detail

/// Random element of F(T,n) drawn from `mix`; each agent is redrawn until it clears the others.
inline Configuration random_configuration(const RootedTree& t, std::size_t n, Rng& rng, const PlacementMix& mix = {}) {
  const auto essential = essential_vertices(t.graph());
  if (essential.empty()) throw Error(Errc::NoEssentialVertex, "sampling needs an essential vertex");
  Configuration c;
  for (std::size_t i = 0; i < n; ++i) {
    bool placed = false;
    for (int attempt = 0; attempt < 1000 && !placed; ++attempt) {
      GraphPoint p = detail::sample_point(t, rng, mix, essential);
      placed = true;
      for (const auto& q : c)
        if (q == p || (mix.min_gap > 0 && t.distance(p, q) < mix.min_gap)) {
          placed = false;
          break;
        }
      if (placed) c.push_back(std::move(p));
    }
    if (!placed) break;
  }
  if (c.size() == n) return c;
  throw Error(Errc::InvalidArgument, "could not place " + std::to_string(n) + " agents with the requested gaps");
}

}  // namespace confplan

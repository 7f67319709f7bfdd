#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <tuple>
#include <vector>

#include "confplan/rooted_tree.hpp"

namespace confplan {

/// Which known result a topological-complexity value rests on.
enum class Justification {
  GraphFormula,       // TC of a connected graph from its first Betti number
  TreePairFormula,    // TC(F(T,2)) for trees: 2 for the letter Y, 3 otherwise
  TreeManyAgents,     // TC(F(T,n)) = 2m+1 for trees with n >= 2m (and the m = 1 case)
  UpperBoundOnly,     // only TC(F(G,n)) <= 2m+1 is known
  KnownSurfaceValue,  // F(K5,2), F(K3,3,2) are closed surfaces
};

inline const char* justification_name(Justification j) {
  switch (j) {
    case Justification::GraphFormula: return "graph-formula";
    case Justification::TreePairFormula: return "tree-pair-formula";
    case Justification::TreeManyAgents: return "tree-many-agents";
    case Justification::UpperBoundOnly: return "upper-bound-only";
    case Justification::KnownSurfaceValue: return "known-surface-value";
  }
  return "unknown";
}

inline const char* justification_statement(Justification j) {
  switch (j) {
    case Justification::GraphFormula:
      return "TC of a connected graph is 1, 2 or 3 as its first Betti number is 0, 1 or >= 2";
    case Justification::TreePairFormula:
      return "for a tree T with an essential vertex, TC(F(T,2)) = 2 if T is homeomorphic to the letter Y and 3 otherwise";
    case Justification::TreeManyAgents:
      return "for a tree T with m >= 1 essential vertices and n >= 2m (excluding Y with n = 2), TC(F(T,n)) = 2m+1; "
             "for m = 1 the value is 3 for every n >= 2 except Y with n = 2";
    case Justification::UpperBoundOnly:
      return "TC(F(G,n)) <= 2m(G)+1 for a connected graph with an essential vertex";
    case Justification::KnownSurfaceValue:
      return "F(K5,2) and F(K3,3,2) are closed orientable surfaces of genus 6 and 4, so TC = 5";
  }
  return "";
}

struct TCReport {
  bool exact = true;
  int lower = 0;
  int upper = 0;
  Justification justification = Justification::GraphFormula;

  int value() const {
    if (!exact) throw Error(Errc::InvalidArgument, "TC report is an interval");
    return lower;
  }

  static TCReport exactly(int v, Justification j) { return TCReport{true, v, v, j}; }
  static TCReport between(int lo, int hi, Justification j) { return TCReport{lo == hi, lo, hi, j}; }
};

/// TC of the graph itself.
inline TCReport tc_graph(const Graph& g) {
  const std::size_t b1 = first_betti(g);
  return TCReport::exactly(b1 == 0 ? 1 : b1 == 1 ? 2 : 3, Justification::GraphFormula);
}

/// 2m(G)+1.
inline int tc_conf_upper(const Graph& g, std::size_t n) {
  if (n < 1) throw Error(Errc::InvalidArgument, "need at least one agent");
  const std::size_t m = essential_count(g);
  if (m == 0) throw Error(Errc::NoEssentialVertex, "upper bound needs an essential vertex");
  return static_cast<int>(2 * m + 1);
}

/// Multigraph left after erasing every degree-2 vertex and merging its two edges.
struct ReducedGraph {
  std::size_t vertex_count = 0;
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  /// True when the graph was a bare cycle (nothing but degree-2 vertices).
  bool circle = false;

  std::vector<std::size_t> degrees() const {
    std::vector<std::size_t> d(vertex_count, 0);
    for (auto [a, b] : edges) {
      ++d[a];
      ++d[b];
    }
    return d;
  }
};

inline ReducedGraph suppress_degree_two(const Graph& g) {
  ReducedGraph out;
  std::vector<std::size_t> keep(g.vertex_count(), static_cast<std::size_t>(-1));
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    if (g.degree(v) != 2) keep[v] = out.vertex_count++;
  if (out.vertex_count == 0) {
    out.circle = true;
    return out;
  }
  std::vector<char> used(g.edge_count(), 0);
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    if (keep[v] == static_cast<std::size_t>(-1)) continue;
    for (std::size_t e : g.incident_edges(v)) {
      if (used[e]) continue;
      used[e] = 1;
      std::size_t at = g.other_end(e, v), via = e;
      while (keep[at] == static_cast<std::size_t>(-1)) {
        const auto& inc = g.incident_edges(at);
        via = inc[0] == via ? inc[1] : inc[0];
        used[via] = 1;
        at = g.other_end(via, at);
      }
      out.edges.emplace_back(keep[v], keep[at]);
    }
  }
  return out;
}

/// Tree homeomorphic to the letter Y: after suppressing degree-2 vertices it is the 3-star.
inline bool is_letter_y(const Graph& g) {
  if (!is_tree(g)) return false;
  const ReducedGraph r = suppress_degree_two(g);
  if (r.vertex_count != 4 || r.edges.size() != 3) return false;
  auto d = r.degrees();
  std::sort(d.begin(), d.end());
  return d == std::vector<std::size_t>{1, 1, 1, 3};
}

/// TC(F(T,n)) for a tree T, exact where a theorem pins it, otherwise the interval [3, 2m+1].
inline TCReport tc_conf_tree(const Graph& tree, std::size_t n) {
  if (!is_tree(tree)) throw Error(Errc::NotATree, "graph has a cycle");
  const std::size_t m = essential_count(tree);
  if (m == 0) throw Error(Errc::NoEssentialVertex, "tree has no essential vertex");
  if (n < 2) throw Error(Errc::InvalidArgument, "needs at least two agents");
  const int top = static_cast<int>(2 * m + 1);
  const bool y = is_letter_y(tree);
  if (n == 2) return TCReport::exactly(y ? 2 : 3, Justification::TreePairFormula);
  if (m == 1) return TCReport::exactly(3, Justification::TreeManyAgents);
  if (n >= 2 * m) return TCReport::exactly(top, Justification::TreeManyAgents);
  return TCReport::between(3, top, Justification::UpperBoundOnly);
}

/// Sum over vertices of (deg-1)(deg-2).
inline BigInt branching_sum(const Graph& g) {
  BigInt sum = 0;
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    const long d = static_cast<long>(g.degree(v));
    sum += BigInt((d - 1) * (d - 2));
  }
  return sum;
}

inline void require_tree_with_essential(const Graph& g) {
  if (!is_tree(g)) throw Error(Errc::NotATree, "graph has a cycle");
  if (essential_count(g) == 0) throw Error(Errc::NoEssentialVertex, "tree has no essential vertex");
}

/// Number of circles in the wedge F(T,2) is homotopy equivalent to.
inline BigInt circle_count_F2(const Graph& tree) {
  require_tree_with_essential(tree);
  return branching_sum(tree) - 1;
}

/// Number of circles in the wedge B(T,2) = F(T,2)/Z2 is homotopy equivalent to.
inline BigInt circle_count_B2(const Graph& tree) {
  require_tree_with_essential(tree);
  const BigInt s = branching_sum(tree);
  if (s % 2 != 0) throw Error(Errc::InvariantViolation, "branching sum is odd");
  return s / 2;
}

/// Two-vertex 1-complex with one cell per (essential vertex, ordered pair of distinct ascending
/// edges) and the involution swapping the pair; Z2-equivalent to F(T,2).
struct YComplex {
  struct Cell {
    std::size_t vertex;
    std::size_t first;
    std::size_t second;
  };

  std::vector<Cell> cells;
  /// involution[i] is the cell carrying the swapped label of cell i.
  std::vector<std::size_t> involution;

  std::size_t rank() const { return cells.empty() ? 0 : cells.size() - 1; }
  /// The involution on the two vertices: A <-> B.
  static char swap_vertex(char v) { return v == 'A' ? 'B' : 'A'; }
};

inline YComplex build_y_complex(const RootedTree& t) {
  require_tree_with_essential(t.graph());
  YComplex y;
  std::map<std::tuple<std::size_t, std::size_t, std::size_t>, std::size_t> index;
  for (std::size_t v = 0; v < t.graph().vertex_count(); ++v) {
    if (t.graph().degree(v) < 3) continue;
    const auto& up = t.ascending_edges(v);
    for (std::size_t i : up)
      for (std::size_t j : up)
        if (i != j) {
          index[{v, i, j}] = y.cells.size();
          y.cells.push_back(YComplex::Cell{v, i, j});
        }
  }
  for (const auto& c : y.cells) y.involution.push_back(index.at({c.vertex, c.second, c.first}));
  return y;
}

enum class WedgeVariant { Printed, Corrected };

/// Circle count of the wedge modelling F(T,n) for a tree with one essential vertex of degree eta:
/// 1 + [(n-1)(eta-2) - 1] * F / (eta-1)!, with F = (n+eta-2)! (corrected) or (n+eta+2)! (as
/// printed in the literature). Only the corrected variant agrees with the two-particle circle
/// count (eta^2 - 3 eta + 1 at n = 2); the printed one gives 6721 instead of 5 at eta = 4, n = 2.
inline BigInt ghrist_wedge_count(long eta, long n, WedgeVariant variant = WedgeVariant::Corrected) {
  if (eta < 3 || n < 2) throw Error(Errc::InvalidArgument, "needs eta >= 3 and n >= 2");
  auto factorial = [](long k) {
    BigInt f;
    mpz_fac_ui(f.get_mpz_t(), static_cast<unsigned long>(k));
    return f;
  };
  const long top = variant == WedgeVariant::Corrected ? n + eta - 2 : n + eta + 2;
  const BigInt ratio = factorial(top) / factorial(eta - 1);
  return 1 + BigInt((n - 1) * (eta - 2) - 1) * ratio;
}

struct KnownValue {
  std::string graph;
  std::size_t agents;
  int tc;
  std::string note;
};

inline const std::vector<KnownValue>& known_values() {
  static const std::vector<KnownValue> table{
      {"K5", 2, 5, "F(K5,2) is homotopy equivalent to the closed orientable surface of genus 6"},
      {"K3,3", 2, 5, "F(K3,3,2) is homotopy equivalent to the closed orientable surface of genus 4"},
  };
  return table;
}

inline std::optional<KnownValue> lookup_known(const std::string& graph, std::size_t agents) {
  for (const auto& kv : known_values())
    if (kv.graph == graph && kv.agents == agents) return kv;
  return std::nullopt;
}

/// "K5" or "K3,3" when `g` is homeomorphic to one of them, otherwise empty.
inline std::optional<std::string> recognize_known_graph(const Graph& g) {
  const ReducedGraph r = suppress_degree_two(g);
  if (r.circle) return std::nullopt;
  std::set<std::pair<std::size_t, std::size_t>> simple;
  for (auto [a, b] : r.edges) {
    if (a == b || !simple.insert(std::minmax(a, b)).second) return std::nullopt;
  }
  const auto d = r.degrees();
  if (r.vertex_count == 5 && r.edges.size() == 10 && std::all_of(d.begin(), d.end(), [](std::size_t x) { return x == 4; }))
    return "K5";
  if (r.vertex_count == 6 && r.edges.size() == 9 && std::all_of(d.begin(), d.end(), [](std::size_t x) { return x == 3; })) {
    // 3-regular on 6 vertices: K3,3 exactly when bipartite.
    std::vector<int> side(6, -1);
    side[0] = 0;
    for (bool changed = true; changed;) {
      changed = false;
      for (auto [a, b] : r.edges) {
        if (side[a] >= 0 && side[b] < 0) side[b] = 1 - side[a], changed = true;
        if (side[b] >= 0 && side[a] < 0) side[a] = 1 - side[b], changed = true;
        if (side[a] >= 0 && side[a] == side[b]) return std::nullopt;
      }
    }
    return "K3,3";
  }
  return std::nullopt;
}

}  // namespace confplan

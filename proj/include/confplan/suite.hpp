#pragma once

#include <string>
#include <vector>

#include "confplan/rooted_tree.hpp"

namespace confplan::suite {

namespace detail {

inline Graph build(std::vector<std::string> vertices, const std::vector<std::pair<std::string, std::string>>& pairs) {
  std::vector<EdgeSpec> edges;
  for (std::size_t i = 0; i < pairs.size(); ++i)
    edges.push_back(EdgeSpec{(i + 1 < 10 ? "e0" : "e") + std::to_string(i + 1), pairs[i].first, pairs[i].second, Rational(1)});
  return Graph(std::move(vertices), std::move(edges));
}

}  // namespace detail

/// Letter Y: centre c, leaves a, b, r.
inline Graph y_tree() { return detail::build({"a", "b", "c", "r"}, {{"c", "a"}, {"c", "b"}, {"c", "r"}}); }

/// Letter H: v1 carries leaves a, b; v2 carries c, d.
inline Graph h_tree() {
  return detail::build({"a", "b", "c", "d", "v1", "v2"}, {{"v1", "a"}, {"v1", "b"}, {"v1", "v2"}, {"v2", "c"}, {"v2", "d"}});
}

/// Star with centre c and leaves l1..lk.
inline Graph star(std::size_t k) {
  std::vector<std::string> vertices{"c"};
  std::vector<std::pair<std::string, std::string>> pairs;
  for (std::size_t i = 1; i <= k; ++i) {
    vertices.push_back("l" + std::to_string(i));
    pairs.emplace_back("c", vertices.back());
  }
  return detail::build(std::move(vertices), pairs);
}

/// Spine v1 - v2 - v3 with two leaves on each spine vertex (degrees 3, 4, 3).
inline Graph caterpillar() {
  return detail::build({"a", "b", "c", "d", "e", "f", "v1", "v2", "v3"},
                       {{"v1", "a"}, {"v1", "b"}, {"v1", "v2"}, {"v2", "c"}, {"v2", "d"}, {"v2", "v3"}, {"v3", "e"}, {"v3", "f"}});
}

/// Y with the branch towards a split by the degree-2 vertex m.
inline Graph y_with_midpoint() {
  return detail::build({"a", "b", "c", "m", "r"}, {{"c", "m"}, {"m", "a"}, {"c", "b"}, {"c", "r"}});
}

inline Graph interval() { return detail::build({"u", "v"}, {{"u", "v"}}); }

inline Graph triangle() { return detail::build({"x", "y", "z"}, {{"x", "y"}, {"y", "z"}, {"z", "x"}}); }

/// Two triangles sharing the vertex o.
inline Graph figure_eight() {
  return detail::build({"o", "p", "q", "s", "w"}, {{"o", "p"}, {"p", "q"}, {"q", "o"}, {"o", "s"}, {"s", "w"}, {"w", "o"}});
}

inline Graph k5() {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (char a = '1'; a <= '5'; ++a)
    for (char b = a + 1; b <= '5'; ++b) pairs.emplace_back(std::string("k") + a, std::string("k") + b);
  return detail::build({"k1", "k2", "k3", "k4", "k5"}, pairs);
}

inline Graph k33() {
  std::vector<std::pair<std::string, std::string>> pairs;
  for (const char* x : {"x1", "x2", "x3"})
    for (const char* y : {"y1", "y2", "y3"}) pairs.emplace_back(x, y);
  return detail::build({"x1", "x2", "x3", "y1", "y2", "y3"}, pairs);
}

struct NamedTree {
  std::string name;
  Graph graph;
  std::string root;

  RootedTree rooted() const { return root_tree(graph, root); }
};

/// The five trees used for the Betti-number and random-planner checks.
inline std::vector<NamedTree> default_trees() {
  return {
      {"Y", y_tree(), "r"},
      {"H", h_tree(), "a"},
      {"star4", star(4), "l1"},
      {"star5", star(5), "l1"},
      {"caterpillar", caterpillar(), "a"},
  };
}

}  // namespace confplan::suite

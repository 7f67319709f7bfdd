#include <gtest/gtest.h>

#include <functional>

#include "support/oracles.hpp"

using namespace confplan;

namespace {

const char* kYDoc = R"({"vertices":["c","a","b","r"],"edges":[
  {"id":"e1","ends":["c","a"],"length":1.0},{"id":"e2","ends":["c","b"],"length":1.0},{"id":"e3","ends":["c","r"],"length":1.0}]})";

GraphPoint pt(const Graph& g, const char* edge, Rational t) { return g.point(*g.find_edge(edge), t); }
GraphPoint vx(const Graph& g, const char* id) { return GraphPoint::at_vertex(*g.find_vertex(id)); }

Errc code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no error raised";
  return Errc::InvariantViolation;
}

}  // namespace

TEST(ParseGraph, YTreeDocument) {
  const Graph g = parse_graph(kYDoc);
  EXPECT_EQ(g.vertex_count(), 4u);
  EXPECT_EQ(g.edge_count(), 3u);
  EXPECT_EQ(first_betti(g), 0u);
}

TEST(ParseGraph, SingleEdgeHasNoCycles) {
  const Graph g = parse_graph(R"({"vertices":["u","v"],"edges":[{"id":"e","ends":["u","v"]}]})");
  EXPECT_EQ(first_betti(g), 0u);
  EXPECT_EQ(g.edge(0).length, 1);
}

TEST(ParseGraph, RejectsBadDocuments) {
  EXPECT_EQ(code_of([] { parse_graph(R"({"vertices":["a","b","c","d"],"edges":[{"id":"e","ends":["a","b"]},{"id":"f","ends":["c","d"]}]})"); }),
            Errc::ValidationError);
  EXPECT_EQ(code_of([] { parse_graph(R"({"vertices":["a","b"],"edges":[{"id":"e","ends":["a","b"],"length":0}]})"); }),
            Errc::ValidationError);
  EXPECT_EQ(code_of([] { parse_graph(R"({"vertices":["a","b"],"edges":[{"id":"e","ends":["a","b"]},{"id":"f","ends":["b","a"]}]})"); }),
            Errc::ValidationError);
  EXPECT_EQ(code_of([] { parse_graph(R"({"vertices":["a"],"edges":[{"id":"e","ends":["a","a"]}]})"); }), Errc::ValidationError);
  EXPECT_EQ(code_of([] { parse_graph(R"({"vertices":[],"edges":[]})"); }), Errc::ValidationError);
  EXPECT_EQ(code_of([] { parse_graph(R"({"vertices":["a","b"],"edges":[{"id":"e","ends":["a"]}]})"); }), Errc::ParseError);
  EXPECT_EQ(code_of([] { parse_graph("{not json"); }), Errc::ParseError);
}

TEST(EssentialVertices, Examples) {
  const Graph y = suite::y_tree();
  ASSERT_EQ(essential_vertices(y).size(), 1u);
  EXPECT_EQ(y.vertex_id(essential_vertices(y)[0]), "c");
  const Graph h = suite::h_tree();
  const auto eh = essential_vertices(h);
  ASSERT_EQ(eh.size(), 2u);
  EXPECT_EQ(h.vertex_id(eh[0]), "v1");
  EXPECT_EQ(h.vertex_id(eh[1]), "v2");
  EXPECT_TRUE(essential_vertices(suite::interval()).empty());
}

TEST(FirstBetti, Examples) {
  EXPECT_EQ(first_betti(suite::triangle()), 1u);
  // K5: 10 edges, 5 vertices.
  EXPECT_EQ(first_betti(suite::k5()), 10u - 5u + 1u);
  EXPECT_EQ(first_betti(suite::caterpillar()), 0u);
}

TEST(RootTree, YTreeClassification) {
  const RootedTree t = root_tree(suite::y_tree(), "r");
  const Graph& g = t.graph();
  EXPECT_EQ(g.edge(t.root_edge()).id, g.edge(*g.edge_between(*g.find_vertex("c"), *g.find_vertex("r"))).id);
  const std::size_t c = *g.find_vertex("c");
  EXPECT_EQ(t.descending_edge(c), t.root_edge());
  EXPECT_EQ(t.ascending_edges(c).size(), 2u);
}

TEST(RootTree, HTreeRootedAtLeaf) {
  const RootedTree t = root_tree(suite::h_tree(), "a");
  const Graph& g = t.graph();
  const std::size_t v1 = *g.find_vertex("v1");
  std::vector<std::string> up;
  for (std::size_t e : t.ascending_edges(v1)) up.push_back(g.vertex_id(g.other_end(e, v1)));
  std::sort(up.begin(), up.end());
  EXPECT_EQ(up, (std::vector<std::string>{"b", "v2"}));
}

TEST(RootTree, Errors) {
  EXPECT_EQ(code_of([] { root_tree(suite::y_tree(), "c"); }), Errc::RootNotUnivalent);
  EXPECT_EQ(code_of([] { root_tree(suite::triangle(), "x"); }), Errc::NotATree);
}

TEST(Precedes, Examples) {
  const RootedTree t = root_tree(suite::y_tree(), "r");
  const Graph& g = t.graph();
  const GraphPoint on_a = pt(g, "e01", ratio(1, 2));
  const GraphPoint on_b = pt(g, "e02", ratio(1, 2));
  const GraphPoint on_root_edge = pt(g, "e03", ratio(1, 2));
  EXPECT_TRUE(t.precedes(on_a, on_root_edge));
  EXPECT_FALSE(t.precedes(on_a, on_b));
  EXPECT_FALSE(t.precedes(on_b, on_a));
  EXPECT_FALSE(t.precedes(on_a, on_a));
}

TEST(Precedes, PartialOrderAndOracleAgreementOnRandomTriples) {
  Rng rng(5);
  for (int round = 0; round < 30; ++round) {
    TreeShape shape;
    shape.essential = 1 + static_cast<std::size_t>(round % 3);
    const RootedTree t = random_tree(rng, shape);
    PlacementMix mix;
    mix.other_vertex = 30;
    mix.margin = 0;
    for (int k = 0; k < 20; ++k) {
      const Configuration c = random_configuration(t, 3, rng, mix);
      const auto &x = c[0], &y = c[1], &z = c[2];
      EXPECT_EQ(t.precedes(x, y), oracle::precedes(t, x, y));
      EXPECT_FALSE(t.precedes(x, y) && t.precedes(y, x));
      if (t.precedes(x, y) && t.precedes(y, z)) EXPECT_TRUE(t.precedes(x, z));
      EXPECT_FALSE(t.precedes(x, x));
    }
  }
}

TEST(GraphDistance, Examples) {
  const Graph g = suite::y_tree();
  EXPECT_EQ(graph_distance(g, vx(g, "a"), vx(g, "b")), 2);
  const GraphPoint x = pt(g, "e01", ratio(1, 4));
  EXPECT_EQ(graph_distance(g, x, x), 0);
  // e01 and e02 both start at c, so t measures from c.
  const GraphPoint y = pt(g, "e02", ratio(1, 2));
  EXPECT_EQ(graph_distance(g, x, y), ratio(3, 4));
  EXPECT_EQ(oracle::distance(g, x, y), ratio(3, 4));
}

TEST(GraphDistance, MetricAxiomsAndOracleOnCyclicGraphs) {
  Rng rng(9);
  for (const Graph& g : {suite::triangle(), suite::figure_eight(), suite::k5(), suite::k33()}) {
    for (int k = 0; k < 25; ++k) {
      std::vector<GraphPoint> p;
      for (int i = 0; i < 3; ++i) {
        if (rng.chance(1, 4)) {
          p.push_back(GraphPoint::at_vertex(rng.index(g.vertex_count())));
        } else {
          p.push_back(g.point(rng.index(g.edge_count()), rng.fraction(1, 99, 100)));
        }
      }
      const auto d = oracle::point_distances(g, p);
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          EXPECT_EQ(graph_distance(g, p[i], p[j]), d[i][j]);
          EXPECT_EQ(graph_distance(g, p[i], p[j]), graph_distance(g, p[j], p[i]));
          EXPECT_EQ(graph_distance(g, p[i], p[j]) == 0, p[i] == p[j]);
        }
      EXPECT_LE(graph_distance(g, p[0], p[2]), graph_distance(g, p[0], p[1]) + graph_distance(g, p[1], p[2]));
    }
  }
}

TEST(Subdivide, Examples) {
  const Graph one = subdivide(suite::interval(), 2);
  EXPECT_EQ(one.vertex_count(), 3u);
  EXPECT_EQ(one.edge_count(), 2u);
  const Graph y3 = subdivide(suite::y_tree(), 3);
  EXPECT_EQ(y3.vertex_count(), 4u + 3u * 2u);
  EXPECT_EQ(y3.edge_count(), 9u);
  EXPECT_EQ(essential_count(y3), 1u);
  const Graph same = subdivide(suite::y_tree(), 1);
  EXPECT_EQ(same.vertex_ids(), suite::y_tree().vertex_ids());
  EXPECT_EQ(same.edge_count(), 3u);
}

TEST(Subdivide, PreservesEssentialCountAndBetti) {
  for (const Graph& g : {suite::h_tree(), suite::figure_eight(), suite::k33(), suite::caterpillar()})
    for (std::size_t k = 1; k <= 4; ++k) {
      const Graph s = subdivide(g, k);
      EXPECT_EQ(essential_count(s), essential_count(g));
      EXPECT_EQ(first_betti(s), first_betti(g));
      EXPECT_EQ(s.shortest_edge_length(), g.shortest_edge_length() / static_cast<long>(k));
    }
}

TEST(GraphPoint, CanonicalForm) {
  const Graph g = suite::y_tree();
  const std::size_t e = *g.find_edge("e01");
  EXPECT_TRUE(g.point(e, 0).is_vertex());
  EXPECT_TRUE(g.point(e, 1).is_vertex());
  EXPECT_EQ(g.point(e, 0), GraphPoint::at_vertex(g.edge(e).u));
  EXPECT_THROW(GraphPoint::interior(e, 0), Error);
  EXPECT_EQ(GraphPoint::interior(e, Rational(2, 4)), GraphPoint::interior(e, ratio(1, 2)));
}

TEST(Configuration, RejectsDuplicates) {
  const Graph g = suite::y_tree();
  const std::size_t e = *g.find_edge("e01");
  EXPECT_THROW(validate_configuration(g, {g.point(e, 1), vx(g, "a")}), Error);
  EXPECT_NO_THROW(validate_configuration(g, {g.point(e, ratio(1, 2)), vx(g, "a")}));
}

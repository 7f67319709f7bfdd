#include <gtest/gtest.h>

#include "support/oracles.hpp"

using namespace confplan;

namespace {

Breakpoint bp(Rational t, GraphPoint p) { return Breakpoint{std::move(t), std::move(p)}; }

struct YFixture {
  Graph g = suite::y_tree();
  std::size_t ea = *g.find_edge("e01");  // c - a
  std::size_t eb = *g.find_edge("e02");  // c - b
  GraphPoint a = GraphPoint::at_vertex(*g.find_vertex("a"));
  GraphPoint b = GraphPoint::at_vertex(*g.find_vertex("b"));
  GraphPoint c = GraphPoint::at_vertex(*g.find_vertex("c"));
  GraphPoint r = GraphPoint::at_vertex(*g.find_vertex("r"));
};

// One agent a -> c -> b and one parked at r.
Trajectory through_centre(const YFixture& y) {
  Trajectory tr;
  tr.agents.push_back({bp(0, y.a), bp(ratio(1, 2), y.c), bp(1, y.b)});
  tr.agents.push_back({bp(0, y.r), bp(1, y.r)});
  return tr;
}

// Random planner output on a random tree, used as material for the algebraic properties.
Trajectory random_motion(Rng& rng, RootedTree& t_out, Configuration* start = nullptr, Configuration* end = nullptr) {
  TreeShape shape;
  shape.essential = 1 + rng.index(2);
  t_out = random_tree(rng, shape);
  const std::size_t n = 2 + rng.index(3);
  const Configuration a = random_configuration(t_out, n, rng), b = random_configuration(t_out, n, rng);
  if (start) *start = a;
  if (end) *end = b;
  return plan(t_out, a, b).combined;
}

}  // namespace

TEST(Collision, HeadOnCrossingOnOneEdge) {
  const Graph g = suite::interval();
  const GraphPoint u = GraphPoint::at_vertex(0), v = GraphPoint::at_vertex(1);
  Trajectory tr;
  tr.agents.push_back({bp(0, u), bp(1, v)});
  tr.agents.push_back({bp(0, v), bp(1, u)});
  const auto cert = check_collision_free(g, tr);
  ASSERT_FALSE(cert.clear);
  EXPECT_EQ(cert.time, ratio(1, 2));
  EXPECT_EQ(cert.position, g.point(0, ratio(1, 2)));
  EXPECT_EQ(cert.agents, (std::pair<std::size_t, std::size_t>{0, 1}));
}

TEST(Collision, ParkedAgentsAreClear) {
  const YFixture y;
  EXPECT_TRUE(check_collision_free(y.g, Trajectory::constant({y.a, y.b, y.r})).clear);
}

TEST(Collision, MeetingAtAVertexFromDifferentEdges) {
  const YFixture y;
  Trajectory tr;
  tr.agents.push_back({bp(0, y.a), bp(1, y.c)});
  tr.agents.push_back({bp(0, y.b), bp(1, y.c)});
  const auto cert = check_collision_free(y.g, tr);
  ASSERT_FALSE(cert.clear);
  EXPECT_EQ(cert.time, 1);
  EXPECT_EQ(cert.position, y.c);
}

TEST(Collision, FollowingAtADistanceIsClear) {
  const YFixture y;
  Trajectory tr;
  tr.agents.push_back({bp(0, y.g.point(y.ea, ratio(1, 2))), bp(ratio(1, 2), y.c), bp(1, y.g.point(y.eb, ratio(1, 2)))});
  tr.agents.push_back({bp(0, y.a), bp(ratio(1, 2), y.g.point(y.ea, ratio(1, 2))), bp(1, y.c)});
  EXPECT_TRUE(check_collision_free(y.g, tr).clear);
  EXPECT_EQ(oracle::sampled_min_gap(y.g, tr, 64), ratio(1, 2));
}

TEST(Collision, VerdictMatchesSampledOracleOnRandomPairs) {
  // Two agents with random straight moves on the Y: whenever sampling sees them coincide the
  // exact check must report a collision, and a reported collision time must be a true meeting.
  Rng rng(21);
  const YFixture y;
  for (int k = 0; k < 200; ++k) {
    auto rand_point = [&] { return y.g.point(rng.index(3), rng.fraction(0, 8, 8)); };
    Trajectory tr;
    for (int i = 0; i < 2; ++i) {
      GraphPoint from = rand_point(), to = rand_point();
      std::vector<GraphPoint> route = root_tree(y.g, "r").route(from, to);
      Schedule s;
      for (std::size_t j = 0; j < route.size(); ++j) s.push_back(bp(route.size() == 1 ? Rational(j) : ratio(static_cast<long>(j), static_cast<long>(route.size() - 1)), route[j]));
      if (s.size() == 1) s.push_back(bp(1, route[0]));
      tr.agents.push_back(std::move(s));
    }
    const auto cert = check_collision_free(y.g, tr);
    if (oracle::sampled_min_gap(y.g, tr, 48) == 0) EXPECT_FALSE(cert.clear);
    if (!cert.clear) {
      EXPECT_EQ(oracle::position(y.g, tr.agents[0], cert.time), oracle::position(y.g, tr.agents[1], cert.time));
      EXPECT_EQ(oracle::position(y.g, tr.agents[0], cert.time), cert.position);
    }
  }
}

TEST(Endpoints, Examples) {
  const YFixture y;
  const auto constant = Trajectory::constant({y.a, y.b});
  EXPECT_EQ(endpoints(constant).first, endpoints(constant).second);
  const auto tr = through_centre(y);
  EXPECT_EQ(endpoints(tr).first, (Configuration{y.a, y.r}));
  EXPECT_EQ(endpoints(tr).second, (Configuration{y.b, y.r}));
}

TEST(Validate, RejectsMalformedSchedules) {
  const YFixture y;
  Trajectory skip;
  skip.agents.push_back({bp(0, y.a), bp(1, y.b)});  // a and b share no edge
  EXPECT_THROW(validate_trajectory(y.g, skip), Error);
  Trajectory times;
  times.agents.push_back({bp(0, y.a), bp(0, y.c), bp(1, y.c)});
  EXPECT_THROW(validate_trajectory(y.g, times), Error);
  Trajectory span;
  span.agents.push_back({bp(0, y.a), bp(ratio(1, 2), y.c)});
  EXPECT_THROW(validate_trajectory(y.g, span), Error);
}

TEST(Concat, Examples) {
  const YFixture y;
  const auto k = Trajectory::constant({y.a});
  EXPECT_EQ(normalize_time(y.g, concat(k, k)), normalize_time(y.g, k));
  Trajectory ac, cb;
  ac.agents.push_back({bp(0, y.a), bp(1, y.c)});
  cb.agents.push_back({bp(0, y.c), bp(1, y.b)});
  const auto ab = concat(ac, cb);
  EXPECT_EQ(endpoints(ab).first, Configuration{y.a});
  EXPECT_EQ(endpoints(ab).second, Configuration{y.b});
  EXPECT_EQ(oracle::position(y.g, ab.agents[0], ratio(1, 2)), y.c);
}

TEST(Concat, Errors) {
  const YFixture y;
  const auto one = Trajectory::constant({y.a});
  const auto two = Trajectory::constant({y.a, y.b});
  try {
    concat(one, two);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::AgentCountMismatch);
  }
  try {
    concat(one, Trajectory::constant({y.b}));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), Errc::EndpointMismatch);
  }
}

TEST(Reverse, Examples) {
  const YFixture y;
  const auto k = Trajectory::constant({y.a, y.r});
  EXPECT_EQ(reverse(k), k);
  Trajectory ac;
  ac.agents.push_back({bp(0, y.a), bp(1, y.c)});
  EXPECT_EQ(endpoints(reverse(ac)).first, Configuration{y.c});
  EXPECT_EQ(endpoints(reverse(ac)).second, Configuration{y.a});
}

TEST(Normalize, RemovesDuplicateAndCollinearBreakpoints) {
  const YFixture y;
  const GraphPoint mid = y.g.point(y.ea, ratio(1, 2));
  Trajectory tr;
  tr.agents.push_back({bp(0, y.c), bp(ratio(1, 2), mid), bp(1, y.a)});
  const auto n = normalize_time(y.g, tr);
  ASSERT_EQ(n.agents[0].size(), 2u);
  EXPECT_EQ(n.agents[0][1].point, y.a);
  EXPECT_EQ(normalize_time(y.g, n), n);
}

TEST(Normalize, AlgebraicPropertiesOnPlannerOutput) {
  Rng rng(3);
  for (int k = 0; k < 25; ++k) {
    RootedTree t = root_tree(suite::y_tree(), "r");
    Configuration a, b;
    const Trajectory x = random_motion(rng, t, &a, &b);
    const Graph& g = t.graph();
    // Build a three-stage chain x, reverse(x), x.
    const Trajectory rx = reverse(x);
    const auto left = normalize_time(g, concat(concat(x, rx), x));
    const auto right = normalize_time(g, concat(x, concat(rx, x)));
    EXPECT_EQ(left, right);
    EXPECT_EQ(normalize_time(g, x), x);
    EXPECT_EQ(normalize_time(g, reverse(rx)), normalize_time(g, x));
    EXPECT_EQ(endpoints(rx).first, b);
    EXPECT_EQ(endpoints(rx).second, a);
    EXPECT_EQ(check_collision_free(g, rx).clear, check_collision_free(g, x).clear);
    EXPECT_EQ(check_collision_free(g, normalize_time(g, concat(x, rx))).clear, true);
  }
}

TEST(Normalize, CollisionVerdictInvariant) {
  const Graph g = suite::interval();
  Trajectory tr;
  tr.agents.push_back({bp(0, GraphPoint::at_vertex(0)), bp(ratio(1, 4), g.point(0, ratio(1, 4))), bp(1, GraphPoint::at_vertex(1))});
  tr.agents.push_back({bp(0, GraphPoint::at_vertex(1)), bp(1, GraphPoint::at_vertex(0))});
  EXPECT_FALSE(check_collision_free(g, tr).clear);
  EXPECT_FALSE(check_collision_free(g, normalize_time(g, tr)).clear);
  EXPECT_FALSE(check_collision_free(g, reverse(tr)).clear);
}

TEST(SupDistance, Examples) {
  const YFixture y;
  const auto tr = through_centre(y);
  EXPECT_EQ(sup_distance(y.g, tr, tr), 0);
  const auto x = Trajectory::constant({y.a});
  const auto z = Trajectory::constant({y.g.point(y.eb, ratio(1, 3))});
  EXPECT_EQ(sup_distance(y.g, x, z), graph_distance(y.g, y.a, y.g.point(y.eb, ratio(1, 3))));
  EXPECT_THROW(sup_distance(y.g, x, tr), Error);
}

TEST(SupDistance, InteriorMaximumIsFound) {
  // Agent 1 goes a -> b through c, agent 2 stays at a: the gap peaks at b (distance 2) at the end.
  // Agent 1 against its own reverse: distance 2 at the ends, 0 at the midpoint.
  const YFixture y;
  Trajectory fwd;
  fwd.agents.push_back({bp(0, y.a), bp(ratio(1, 2), y.c), bp(1, y.b)});
  EXPECT_EQ(sup_distance(y.g, fwd, reverse(fwd)), 2);
  // r -> c -> a versus r -> c -> b: apart only after time 1/2, peak 2 at the end.
  Trajectory ra, rb;
  ra.agents.push_back({bp(0, y.r), bp(ratio(1, 2), y.c), bp(1, y.a)});
  rb.agents.push_back({bp(0, y.r), bp(ratio(1, 2), y.c), bp(1, y.b)});
  EXPECT_EQ(sup_distance(y.g, ra, rb), 2);
}

TEST(SupDistance, MetricAxiomsAndSampledLowerBound) {
  Rng rng(17);
  const RootedTree t = root_tree(suite::h_tree(), "a");
  const Graph& g = t.graph();
  for (int k = 0; k < 12; ++k) {
    std::vector<Trajectory> trs;
    const Configuration a = random_configuration(t, 2, rng);
    for (int i = 0; i < 3; ++i) trs.push_back(plan(t, a, random_configuration(t, 2, rng)).combined);
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        const Rational d = sup_distance(g, trs[i], trs[j]);
        EXPECT_EQ(d, sup_distance(g, trs[j], trs[i]));
        EXPECT_EQ(d == 0, trs[i] == trs[j]);
        EXPECT_GE(d, oracle::sampled_sup_distance(g, trs[i], trs[j], 40));
      }
    EXPECT_LE(sup_distance(g, trs[0], trs[2]), sup_distance(g, trs[0], trs[1]) + sup_distance(g, trs[1], trs[2]));
  }
}

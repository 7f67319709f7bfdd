#pragma once

#include <json.hpp>

#include <fstream>
#include <sstream>
#include <string>

#include "confplan/random_planner.hpp"
#include "confplan/trajectory.hpp"

namespace confplan {

using Json = nlohmann::ordered_json;

namespace detail {

[[noreturn]] inline void parse_fail(const std::string& why) { throw Error(Errc::ParseError, why); }

inline const Json& field(const Json& j, const char* key, const std::string& where) {
  if (!j.is_object() || !j.contains(key)) parse_fail(where + ": missing \"" + key + "\"");
  return j.at(key);
}

inline std::string string_field(const Json& j, const char* key, const std::string& where) {
  const Json& v = field(j, key, where);
  if (!v.is_string()) parse_fail(where + ": \"" + key + "\" must be a string");
  return v.get<std::string>();
}

}  // namespace detail

/// A number (snapped to the simplest rational within 1e-12) or a string "p/q" / decimal.
inline Rational rational_from_json(const Json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(BigInt(std::to_string(j.get<long long>())));
  if (j.is_number()) return snap_to_rational(j.get<double>());
  detail::parse_fail("expected a number or a rational string");
}

inline Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(Errc::ParseError, e.what());
  }
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::ParseError, "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Graph graph_from_json(const Json& j) {
  const std::string where = "graph";
  const Json& vs = detail::field(j, "vertices", where);
  const Json& es = detail::field(j, "edges", where);
  if (!vs.is_array() || !es.is_array()) detail::parse_fail("graph: \"vertices\" and \"edges\" must be arrays");
  std::vector<std::string> vertices;
  for (const auto& v : vs) {
    if (!v.is_string()) detail::parse_fail("graph: vertex ids must be strings");
    vertices.push_back(v.get<std::string>());
  }
  std::vector<EdgeSpec> edges;
  for (const auto& e : es) {
    EdgeSpec spec;
    spec.id = detail::string_field(e, "id", where + " edge");
    const Json& ends = detail::field(e, "ends", "edge '" + spec.id + "'");
    if (!ends.is_array() || ends.size() != 2 || !ends[0].is_string() || !ends[1].is_string())
      detail::parse_fail("edge '" + spec.id + "': \"ends\" must be two vertex ids");
    spec.u = ends[0].get<std::string>();
    spec.v = ends[1].get<std::string>();
    if (e.contains("length")) spec.length = rational_from_json(e.at("length"));
    edges.push_back(std::move(spec));
  }
  return Graph(std::move(vertices), std::move(edges));
}

inline Graph parse_graph(const std::string& text) { return graph_from_json(parse_json_text(text)); }

/// Exact value as "p/q" (or "p").
inline Json rational_to_json(const Rational& r) { return to_string(r); }

inline Json graph_to_json(const Graph& g) {
  Json edges = Json::array();
  for (const auto& e : g.edges())
    edges.push_back(Json{{"id", e.id}, {"ends", {g.vertex_id(e.u), g.vertex_id(e.v)}}, {"length", rational_to_json(e.length)}});
  return Json{{"vertices", g.vertex_ids()}, {"edges", std::move(edges)}};
}

inline GraphPoint point_from_json(const Graph& g, const Json& j) {
  if (j.is_object() && j.contains("vertex")) {
    const std::string id = detail::string_field(j, "vertex", "point");
    const auto v = g.find_vertex(id);
    if (!v) throw Error(Errc::PointNotOnGraph, "unknown vertex '" + id + "'");
    return GraphPoint::at_vertex(*v);
  }
  const std::string id = detail::string_field(j, "edge", "point");
  const auto e = g.find_edge(id);
  if (!e) throw Error(Errc::PointNotOnGraph, "unknown edge '" + id + "'");
  const Rational t = rational_from_json(detail::field(j, "t", "point"));
  if (t < 0 || t > 1) throw Error(Errc::PointNotOnGraph, "edge parameter outside [0,1] on '" + id + "'");
  return g.point(*e, t);
}

inline Json point_to_json(const Graph& g, const GraphPoint& p) {
  if (p.is_vertex()) return Json{{"vertex", g.vertex_id(p.vertex())}};
  return Json{{"edge", g.edge(p.edge()).id}, {"t", rational_to_json(p.t())}, {"t_float", to_double(p.t())}};
}

inline Configuration configuration_from_json(const Graph& g, const Json& j) {
  const Json& pts = detail::field(j, "points", "configuration");
  if (!pts.is_array()) detail::parse_fail("configuration: \"points\" must be an array");
  Configuration c;
  for (const auto& p : pts) c.push_back(point_from_json(g, p));
  validate_configuration(g, c);
  return c;
}

inline Json configuration_to_json(const Graph& g, const Configuration& c) {
  Json pts = Json::array();
  for (const auto& p : c) pts.push_back(point_to_json(g, p));
  return Json{{"points", std::move(pts)}};
}

inline Json trajectory_to_json(const Graph& g, const Trajectory& tr) {
  Json agents = Json::array();
  for (const auto& s : tr.agents) {
    Json sched = Json::array();
    for (const auto& bp : s)
      sched.push_back(Json{{"time", rational_to_json(bp.time)}, {"time_float", to_double(bp.time)}, {"point", point_to_json(g, bp.point)}});
    agents.push_back(std::move(sched));
  }
  return Json{{"agents", std::move(agents)}};
}

inline Trajectory trajectory_from_json(const Graph& g, const Json& j) {
  const Json& agents = detail::field(j, "agents", "trajectory");
  if (!agents.is_array()) detail::parse_fail("trajectory: \"agents\" must be an array");
  Trajectory tr;
  for (const auto& sched : agents) {
    if (!sched.is_array()) detail::parse_fail("trajectory: every agent needs an array of breakpoints");
    Schedule s;
    for (const auto& bp : sched)
      s.push_back(Breakpoint{rational_from_json(detail::field(bp, "time", "breakpoint")), point_from_json(g, detail::field(bp, "point", "breakpoint"))});
    tr.agents.push_back(std::move(s));
  }
  validate_trajectory(g, tr);
  return tr;
}

inline Json certificate_to_json(const Graph& g, const CollisionCertificate& c) {
  if (c.clear) return Json{{"verdict", "clear"}};
  return Json{{"verdict", "collision"},
              {"time", rational_to_json(c.time)},
              {"agents", {c.agents.first, c.agents.second}},
              {"position", point_to_json(g, c.position)}};
}

inline Json random_plan_to_json(const Graph& g, const RandomPlan& rp) {
  Json entries = Json::array();
  for (std::size_t k = 0; k < rp.entries.size(); ++k) {
    const auto& e = rp.entries[k];
    entries.push_back(Json{{"k", k},
                           {"p", rational_to_json(e.p)},
                           {"p_float", to_double(e.p)},
                           {"snapped", e.snapped},
                           {"snapped_agents", {{"from", e.snapped_a}, {"to", e.snapped_b}}},
                           {"trajectory", trajectory_to_json(g, e.path)}});
  }
  return Json{{"entries", std::move(entries)}};
}

}  // namespace confplan

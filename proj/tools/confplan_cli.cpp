// confplan: planning, invariants and oracle checks for configuration spaces of graphs.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <optional>

#include "confplan/confplan.hpp"

using namespace confplan;

namespace {

constexpr const char* kPlannerCitation = "staged planner on rooted trees: park on the root edge, permute, slide, unpark";
constexpr const char* kDomainCitation = "stratification of F(T,n) x F(T,n) into the 2m+1 sets Y_k by agents on essential vertices";
constexpr const char* kRandomCitation = "random motion planners with 2m+1 entries from a partition of unity over the Y_k cover";
constexpr const char* kUpperCitation = "TC(F(G,n)) <= 2m(G)+1";
constexpr const char* kCircleF2Citation = "F(T,2) is homotopy equivalent to a wedge of sum_v (deg(v)-1)(deg(v)-2) - 1 circles";
constexpr const char* kCircleB2Citation = "B(T,2) is homotopy equivalent to a wedge of (1/2) sum_v (deg(v)-1)(deg(v)-2) circles";
constexpr const char* kYComplexCitation = "F(T,2) is Z2-equivariantly homotopy equivalent to the two-vertex complex Y_T";
constexpr const char* kConnectivityCitation = "F(G,n) is connected when G has an essential vertex";

// Loads a document and prefixes any failure with the file it came from.
template <class F>
auto from_file(const std::string& path, F&& parse) {
  try {
    return parse(parse_json_text(read_file(path)));
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + e.message());
  }
}

Graph load_graph(const std::string& path) {
  return from_file(path, [](const Json& j) { return graph_from_json(j); });
}

Configuration load_configuration(const Graph& g, const std::string& path) {
  return from_file(path, [&](const Json& j) { return configuration_from_json(g, j); });
}

void emit(const Json& doc, const std::string& out) {
  const std::string text = doc.dump(2) + "\n";
  if (out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) throw Error(Errc::InvalidArgument, "cannot write '" + out + "'");
  f << text;
}

Json tc_report_json(const TCReport& r) {
  Json j;
  if (r.exact) {
    j["kind"] = "exact";
    j["value"] = r.lower;
  } else {
    j["kind"] = "interval";
    j["lower"] = r.lower;
    j["upper"] = r.upper;
  }
  j["justification"] = justification_name(r.justification);
  return j;
}

// Re-reads a serialized trajectory and checks it from scratch.
Json recheck(const Graph& g, const Json& doc, const Configuration& a, const Configuration& b) {
  const Trajectory tr = trajectory_from_json(g, doc);
  const auto cert = check_collision_free(g, tr);
  const auto ends = endpoints(tr);
  if (!cert.clear) throw Error(Errc::InvariantViolation, "emitted trajectory collides");
  if (ends.first != a || ends.second != b) throw Error(Errc::InvariantViolation, "emitted trajectory has the wrong endpoints");
  return Json{{"verdict", "clear"}, {"endpoints", "match"}};
}

struct PlanArgs {
  std::string graph, root, from, to, out;
  bool recheck = false;
};

void add_plan_options(CLI::App* cmd, PlanArgs& a) {
  cmd->add_option("--graph", a.graph, "graph document (JSON)")->required();
  cmd->add_option("--root", a.root, "id of a degree-1 vertex used as the root")->required();
  cmd->add_option("--from", a.from, "start configuration document")->required();
  cmd->add_option("--to", a.to, "goal configuration document")->required();
  cmd->add_option("--out", a.out, "write the document here instead of standard output");
  cmd->add_flag("--recheck", a.recheck, "parse the emitted trajectories back and re-run the exact collision check");
}

Json run_plan(const PlanArgs& args) {
  const Graph g = load_graph(args.graph);
  const RootedTree t = root_tree(g, args.root);
  const Configuration a = load_configuration(g, args.from);
  const Configuration b = load_configuration(g, args.to);
  const PlanStages stages = plan(t, a, b);
  Json doc;
  doc["agents"] = a.size();
  doc["root"] = args.root;
  doc["stages"] = Json{{"descentA", trajectory_to_json(g, stages.descent_a)},
                       {"permute", trajectory_to_json(g, stages.permute)},
                       {"slide", trajectory_to_json(g, stages.slide)},
                       {"descentB", trajectory_to_json(g, stages.descent_b)},
                       {"combined", trajectory_to_json(g, stages.combined)}};
  doc["domain_index"] = domain_index(t, a, b);
  doc["strata"] = Json{{"from", stratum(t, a)}, {"to", stratum(t, b)}};
  doc["domains"] = 2 * essential_count(g) + 1;
  doc["collision_check"] = certificate_to_json(g, check_collision_free(g, stages.combined));
  if (args.recheck) doc["recheck"] = recheck(g, doc["stages"]["combined"], a, b);
  doc["citations"] = Json::array({kPlannerCitation, kDomainCitation});
  return doc;
}

Json run_random_plan(const PlanArgs& args, const std::optional<double>& eps_value, const std::string& blend_name) {
  const Graph g = load_graph(args.graph);
  const RootedTree t = root_tree(g, args.root);
  const Configuration a = load_configuration(g, args.from);
  const Configuration b = load_configuration(g, args.to);
  BumpParams eps = eps_value ? BumpParams{snap_to_rational(*eps_value)} : BumpParams::defaults(g);
  const Blend blend = blend_name == "exact-count" ? Blend::ExactCount : Blend::Threshold;
  const RandomPlan rp = random_plan(t, a, b, eps, blend);
  Json doc = random_plan_to_json(g, rp);
  doc["epsilon"] = rational_to_json(eps.epsilon);
  doc["blend"] = blend_name;
  doc["total_probability"] = rational_to_json(rp.total());
  if (args.recheck) {
    Json checks = Json::array();
    for (std::size_t k = 0; k < rp.entries.size(); ++k)
      checks.push_back(rp.entries[k].p > 0 ? recheck(g, doc["entries"][k]["trajectory"], a, b) : Json{{"verdict", "skipped (p = 0)"}});
    doc["recheck"] = std::move(checks);
  }
  doc["citations"] = Json::array({kRandomCitation, kPlannerCitation, kUpperCitation});
  return doc;
}

Json run_tc(const std::string& graph_path, const std::optional<std::size_t>& agents) {
  const Graph g = load_graph(graph_path);
  Json doc;
  doc["inputs"] = Json{{"graph", graph_path}, {"vertices", g.vertex_count()}, {"edges", g.edge_count()}};
  if (agents) doc["inputs"]["agents"] = *agents;
  const std::size_t m = essential_count(g);
  doc["first_betti"] = first_betti(g);
  doc["essential_vertices"] = m;
  const TCReport graph_tc = tc_graph(g);
  doc["graph_tc"] = tc_report_json(graph_tc);
  Json citations = Json::array({justification_statement(graph_tc.justification)});

  if (agents) {
    const std::size_t n = *agents;
    if (n < 1) throw Error(Errc::InvalidArgument, "--agents must be at least 1");
    const auto known = recognize_known_graph(g);
    std::optional<KnownValue> kv = known ? lookup_known(*known, n) : std::nullopt;
    if (kv) {
      doc["configuration_tc"] = tc_report_json(TCReport::exactly(kv->tc, Justification::KnownSurfaceValue));
      doc["configuration_tc"]["recognized_as"] = kv->graph;
      doc["configuration_tc"]["note"] = kv->note;
      citations.push_back(justification_statement(Justification::KnownSurfaceValue));
    } else if (m == 0) {
      doc["configuration_tc"] = nullptr;
      doc["configuration_tc_note"] = "no essential vertex: no bound applies";
    } else if (is_tree(g) && n >= 2) {
      const TCReport r = tc_conf_tree(g, n);
      doc["configuration_tc"] = tc_report_json(r);
      citations.push_back(justification_statement(r.justification));
    } else {
      // n = 1 gives TC of the graph itself; otherwise only the upper bound is available.
      const TCReport r = n == 1 ? TCReport::exactly(graph_tc.lower, Justification::GraphFormula)
                                : TCReport::between(1, tc_conf_upper(g, n), Justification::UpperBoundOnly);
      doc["configuration_tc"] = tc_report_json(r);
      citations.push_back(justification_statement(r.justification));
    }
    if (m > 0) doc["upper_bound"] = tc_conf_upper(g, n);
  }
  doc["citations"] = std::move(citations);
  return doc;
}

Json run_analyze(const std::string& graph_path, const std::string& root) {
  const Graph g = load_graph(graph_path);
  const RootedTree t = root_tree(g, root);
  Json doc;
  Json ess = Json::array();
  for (std::size_t v : essential_vertices(g)) ess.push_back(Json{{"id", g.vertex_id(v)}, {"degree", g.degree(v)}});
  doc["essential_vertices"] = std::move(ess);
  doc["m"] = essential_count(g);
  doc["first_betti"] = first_betti(g);
  doc["root"] = root;
  doc["root_edge"] = g.edge(t.root_edge()).id;
  doc["circle_count_F2"] = circle_count_F2(g).get_str();
  doc["circle_count_B2"] = circle_count_B2(g).get_str();
  const YComplex y = build_y_complex(t);
  Json cells = Json::array();
  for (std::size_t i = 0; i < y.cells.size(); ++i) {
    const auto& c = y.cells[i];
    cells.push_back(Json{{"index", i},
                         {"vertex", g.vertex_id(c.vertex)},
                         {"pair", {g.edge(c.first).id, g.edge(c.second).id}},
                         {"involution", y.involution[i]}});
  }
  doc["y_complex"] = Json{{"vertices", {"A", "B"}}, {"cells", std::move(cells)}, {"rank", y.rank()}};
  doc["consistent"] = BigInt(static_cast<unsigned long>(y.rank())) == circle_count_F2(g);
  doc["citations"] = Json::array({kCircleF2Citation, kCircleB2Citation, kYComplexCitation});
  return doc;
}

Json discretize_summary(const DiscreteConfigComplex& c) {
  Json counts = Json::array();
  for (std::size_t d = 0; d <= c.dimension(); ++d) counts.push_back(c.cell_count(d));
  Json j{{"agents", c.agents()}, {"ordered", c.ordered()}, {"cells_by_dimension", std::move(counts)},
         {"euler_characteristic", c.euler_characteristic()}};
  const std::size_t comps = connected_components(c);
  j["components"] = comps;
  if (c.agents() <= 2 && comps == 1 && first_betti(c.graph()) == 0) j["betti1"] = betti1_via_euler(c);
  return j;
}

Json run_discretize(const std::string& graph_path, std::size_t agents, std::size_t subdivision, bool unordered) {
  const Graph g = load_graph(graph_path);
  Json doc = discretize_summary(build_complex(g, agents, subdivision, !unordered));
  doc["subdivision"] = subdivision;
  doc["citations"] = Json::array({kConnectivityCitation});
  return doc;
}

Json run_verify(const std::string& suite_name, std::uint64_t seed, std::size_t fuzz) {
  if (suite_name != "default") throw Error(Errc::InvalidArgument, "unknown suite '" + suite_name + "'");
  Json rows = Json::array();
  bool all = true;
  auto row = [&](const std::string& name, const Json& expected, const Json& got, Json extra = Json::object()) {
    const bool pass = expected == got;
    all = all && pass;
    Json r{{"check", name}, {"expected", expected}, {"actual", got}, {"pass", pass}};
    for (auto& [k, v] : extra.items()) r[k] = v;
    rows.push_back(std::move(r));
  };

  for (const auto& nt : suite::default_trees()) {
    for (bool ordered : {true, false}) {
      const auto c = build_complex(nt.graph, 2, 3, ordered);
      const std::string expected = (ordered ? circle_count_F2(nt.graph) : circle_count_B2(nt.graph)).get_str();
      row(nt.name + (ordered ? " b1 F(T,2)" : " b1 B(T,2)"), expected, std::to_string(betti1_via_euler(c)),
          discretize_summary(c));
    }
    const auto finer = build_complex(nt.graph, 2, 5, true);
    row(nt.name + " b1 F(T,2) at subdivision 5", circle_count_F2(nt.graph).get_str(), std::to_string(betti1_via_euler(finer)));
    for (std::size_t n : {2u, 3u}) row(nt.name + " components n=" + std::to_string(n), 1, connected_components(build_complex(nt.graph, n, n + 1, true)));
    row(nt.name + " Y-complex rank", circle_count_F2(nt.graph).get_str(), std::to_string(build_y_complex(nt.rooted()).rank()));
  }
  row("interval components n=2", 2, connected_components(build_complex(suite::interval(), 2, 3, true)));
  row("triangle components n=3 (at least 2)", true, connected_components(build_complex(suite::triangle(), 3, 4, true)) >= 2);

  Rng rng(seed);
  std::size_t clear = 0;
  for (std::size_t i = 0; i < fuzz; ++i) {
    TreeShape shape;
    shape.essential = 1 + i % 3;
    const RootedTree t = random_tree(rng, shape);
    const std::size_t n = 2 + rng.index(2 * shape.essential + 1);
    const Configuration a = random_configuration(t, n, rng);
    const Configuration b = random_configuration(t, n, rng);
    const Trajectory tr = plan(t, a, b).combined;
    if (check_collision_free(t.graph(), tr).clear && endpoints(tr) == std::make_pair(a, b)) ++clear;
  }
  row("planner fuzz (seed " + std::to_string(seed) + ")", fuzz, clear);

  return Json{{"suite", suite_name}, {"rows", std::move(rows)}, {"pass", all},
              {"citations", Json::array({kCircleF2Citation, kCircleB2Citation, kConnectivityCitation, kPlannerCitation})}};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Collision-free motion planning on trees and topological complexity of graph configuration spaces"};
  app.require_subcommand(1);

  PlanArgs plan_args;
  auto* plan_cmd = app.add_subcommand("plan", "plan a collision-free motion between two configurations on a tree");
  add_plan_options(plan_cmd, plan_args);

  PlanArgs rp_args;
  std::optional<double> eps;
  std::string blend = "threshold";
  auto* rp_cmd = app.add_subcommand("random-plan", "(2m+1)-valued random motion plan between two configurations");
  add_plan_options(rp_cmd, rp_args);
  rp_cmd->add_option("--eps", eps, "bump radius in length units (default: 0.1 x shortest edge; must be below half of it)");
  rp_cmd->add_option("--blend", blend, "how probabilities are formed: threshold (default) or exact-count")
      ->check(CLI::IsMember({"threshold", "exact-count"}));

  std::string tc_graph_path, tc_out;
  std::optional<std::size_t> tc_agents;
  auto* tc_cmd = app.add_subcommand("tc", "topological complexity of a graph and of its configuration space");
  tc_cmd->add_option("--graph", tc_graph_path, "graph document (JSON)")->required();
  tc_cmd->add_option("--agents", tc_agents, "number of agents n for F(G,n)");
  tc_cmd->add_option("--out", tc_out, "write the document here instead of standard output");

  std::string an_graph, an_root, an_out;
  auto* an_cmd = app.add_subcommand("analyze", "circle counts and the two-particle cell complex of a rooted tree");
  an_cmd->add_option("--graph", an_graph, "tree document (JSON)")->required();
  an_cmd->add_option("--root", an_root, "id of a degree-1 vertex")->required();
  an_cmd->add_option("--out", an_out, "write the document here instead of standard output");

  std::string suite_name = "default", v_out;
  std::uint64_t seed = 1;
  std::size_t fuzz = 100;
  auto* v_cmd = app.add_subcommand("verify", "run the discrete-oracle cross-checks and a seeded planner fuzz");
  v_cmd->add_option("--suite", suite_name, "suite name (only 'default')");
  v_cmd->add_option("--seed", seed, "seed for the planner fuzz rows");
  v_cmd->add_option("--fuzz", fuzz, "number of fuzzed planner instances");
  v_cmd->add_option("--out", v_out, "write the document here instead of standard output");

  std::string d_graph, d_out;
  std::size_t d_agents = 2, d_sub = 3;
  bool d_unordered = false;
  auto* d_cmd = app.add_subcommand("discretize", "cell counts of the discretized configuration complex");
  d_cmd->add_option("--graph", d_graph, "graph document (JSON)")->required();
  d_cmd->add_option("--agents", d_agents, "number of agents")->required();
  d_cmd->add_option("--subdivision", d_sub, "pieces per edge (at least agents + 1)")->required();
  d_cmd->add_flag("--unordered", d_unordered, "identify tuples up to relabelling the agents");
  d_cmd->add_option("--out", d_out, "write the document here instead of standard output");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 1;
  }

  try {
    if (*plan_cmd) emit(run_plan(plan_args), plan_args.out);
    if (*rp_cmd) emit(run_random_plan(rp_args, eps, blend), rp_args.out);
    if (*tc_cmd) emit(run_tc(tc_graph_path, tc_agents), tc_out);
    if (*an_cmd) emit(run_analyze(an_graph, an_root), an_out);
    if (*d_cmd) emit(run_discretize(d_graph, d_agents, d_sub, d_unordered), d_out);
    if (*v_cmd) {
      const Json doc = run_verify(suite_name, seed, fuzz);
      emit(doc, v_out);
      if (!doc["pass"].get<bool>()) return 2;
    }
  } catch (const Error& e) {
    std::cerr << Json{{"error", {{"code", errc_name(e.code())}, {"message", e.message()}}}}.dump() << "\n";
    return e.code() == Errc::InvariantViolation ? 2 : 1;
  }
  return 0;
}

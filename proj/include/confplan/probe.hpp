#pragma once

#include <vector>

#include "confplan/random_planner.hpp"
#include "confplan/sampling.hpp"

namespace confplan {

/// Perturbation direction for one agent: interior agents slide u*delta along their edge (positive
/// u towards the edge's second endpoint), vertex agents step |u|*delta into incident edge number
/// `edge_choice` (mod degree).
struct Nudge {
  Rational u;
  std::size_t edge_choice = 0;
};

inline GraphPoint apply_nudge(const RootedTree& t, const GraphPoint& p, const Nudge& nudge, const Rational& delta) {
  const Graph& g = t.graph();
  if (p.is_vertex()) {
    const Rational s = abs_value(nudge.u) * delta;
    if (s == 0) return p;
    const auto& inc = g.incident_edges(p.vertex());
    const std::size_t e = inc[nudge.edge_choice % inc.size()];
    return t.point_from(e, p.vertex(), s / g.edge(e).length);
  }
  const Rational s = p.t() + nudge.u * delta / g.edge(p.edge()).length;
  if (s <= 0 || s >= 1) throw Error(Errc::InvariantViolation, "nudge leaves the edge");
  return g.point(p.edge(), s);
}

inline Configuration apply_nudges(const RootedTree& t, const Configuration& c, const std::vector<Nudge>& nudges, const Rational& delta) {
  Configuration out;
  for (std::size_t i = 0; i < c.size(); ++i) out.push_back(apply_nudge(t, c[i], nudges[i], delta));
  return out;
}

inline std::vector<Nudge> random_nudges(Rng& rng, std::size_t n) {
  std::vector<Nudge> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(Nudge{rng.fraction(-1000, 1000, 1000), rng.index(8)});
  return out;
}

struct ProbeReport {
  std::vector<Rational> deltas;
  /// deviations[trial][d] at deltas[d].
  std::vector<std::vector<Rational>> deviations;
  std::vector<Rational> max;

  /// Each scale's worst deviation is strictly below the previous one (or both are zero).
  bool monotone() const {
    for (std::size_t d = 1; d < max.size(); ++d)
      if (!(max[d] < max[d - 1] || (max[d] == 0 && max[d - 1] == 0))) return false;
    return true;
  }
};

/// Default perturbation scales 1e-2, 1e-3, 1e-4 times the shortest edge.
inline std::vector<Rational> probe_deltas(const Graph& g) {
  const Rational l = g.shortest_edge_length();
  return {l / 100, l / 1000, l / 10000};
}

/// Total variation of the probabilities plus the path gaps weighted by the shared probability.
inline Rational random_plan_deviation(const Graph& g, const RandomPlan& x, const RandomPlan& y) {
  if (x.entries.size() != y.entries.size()) throw Error(Errc::DimensionMismatch, "random plans with different entry counts");
  Rational dev(0);
  for (std::size_t k = 0; k < x.entries.size(); ++k) {
    const auto& ex = x.entries[k];
    const auto& ey = y.entries[k];
    dev += abs_value(ex.p - ey.p);
    const Rational shared = ex.p < ey.p ? ex.p : ey.p;
    if (shared > 0) dev += shared * sup_distance(g, ex.path, ey.path);
  }
  return dev;
}

namespace detail {

// Base points sit at essential vertices, near them, or well inside edges, with gaps wide enough
// that every nudge at the largest scale keeps agents apart and interior points inside their edge.
inline PlacementMix probe_mix(const Graph& g, const BumpParams& eps) {
  PlacementMix mix;
  mix.essential_vertex = 15;
  mix.other_vertex = 5;
  mix.near_essential = 35;
  mix.near_lo = eps.epsilon / 5;
  mix.near_hi = eps.epsilon * 3 / 2;
  mix.margin = ratio(1, 10);
  mix.min_gap = g.shortest_edge_length() / 20;
  return mix;
}

}  // namespace detail

/// Continuity check of random_plan: for `trials` random pairs, nudge every agent by each scale in
/// a fixed random direction and measure random_plan_deviation.
inline ProbeReport continuity_probe(const RootedTree& t, std::size_t agents, std::uint64_t seed, std::size_t trials,
                                    const BumpParams& eps, Blend blend = Blend::Threshold) {
  const Graph& g = t.graph();
  eps.validate(g);
  Rng rng(seed);
  const PlacementMix mix = detail::probe_mix(g, eps);
  ProbeReport report;
  report.deltas = probe_deltas(g);
  report.max.assign(report.deltas.size(), Rational(0));
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const Configuration a = random_configuration(t, agents, rng, mix);
    const Configuration b = random_configuration(t, agents, rng, mix);
    const auto na = random_nudges(rng, agents);
    const auto nb = random_nudges(rng, agents);
    const RandomPlan base = random_plan(t, a, b, eps, blend);
    std::vector<Rational> row;
    for (std::size_t d = 0; d < report.deltas.size(); ++d) {
      const auto& delta = report.deltas[d];
      const RandomPlan moved = random_plan(t, apply_nudges(t, a, na, delta), apply_nudges(t, b, nb, delta), eps, blend);
      row.push_back(random_plan_deviation(g, base, moved));
      if (row.back() > report.max[d]) report.max[d] = row.back();
    }
    report.deviations.push_back(std::move(row));
  }
  return report;
}

/// Same probe for the deterministic planner, nudging only agents off essential vertices so both
/// ends stay in their strata.
inline ProbeReport planner_continuity_probe(const RootedTree& t, std::size_t agents, std::uint64_t seed, std::size_t trials) {
  const Graph& g = t.graph();
  Rng rng(seed);
  const PlacementMix mix = detail::probe_mix(g, BumpParams::defaults(g));
  ProbeReport report;
  report.deltas = probe_deltas(g);
  report.max.assign(report.deltas.size(), Rational(0));
  auto freeze = [&](const Configuration& c, std::vector<Nudge> nudges) {
    for (std::size_t i = 0; i < c.size(); ++i)
      if (c[i].is_vertex() && g.degree(c[i].vertex()) >= 3) nudges[i].u = 0;
    return nudges;
  };
  for (std::size_t trial = 0; trial < trials; ++trial) {
    const Configuration a = random_configuration(t, agents, rng, mix);
    const Configuration b = random_configuration(t, agents, rng, mix);
    const auto na = freeze(a, random_nudges(rng, agents));
    const auto nb = freeze(b, random_nudges(rng, agents));
    const Trajectory base = plan(t, a, b).combined;
    std::vector<Rational> row;
    for (std::size_t d = 0; d < report.deltas.size(); ++d) {
      const auto& delta = report.deltas[d];
      const Configuration a2 = apply_nudges(t, a, na, delta);
      const Configuration b2 = apply_nudges(t, b, nb, delta);
      if (stratum(t, a2) != stratum(t, a) || stratum(t, b2) != stratum(t, b))
        throw Error(Errc::InvariantViolation, "within-stratum nudge changed the stratum");
      row.push_back(sup_distance(g, base, plan(t, a2, b2).combined));
      if (row.back() > report.max[d]) report.max[d] = row.back();
    }
    report.deviations.push_back(std::move(row));
  }
  return report;
}

/// Agent `agent` of `a` sits on a degree-2 vertex; for each of its two edges, the plan from `a` is
/// compared with the plan after stepping the agent delta into that edge. Result [edge][delta].
inline std::vector<std::vector<Rational>> degree_two_probe(const RootedTree& t, const Configuration& a, const Configuration& b,
                                                           std::size_t agent, const std::vector<Rational>& deltas) {
  const Graph& g = t.graph();
  if (agent >= a.size() || !a[agent].is_vertex() || g.degree(a[agent].vertex()) != 2)
    throw Error(Errc::InvalidArgument, "agent must sit on a degree-2 vertex");
  const Trajectory base = plan(t, a, b).combined;
  std::vector<std::vector<Rational>> out;
  for (std::size_t e : g.incident_edges(a[agent].vertex())) {
    std::vector<Rational> row;
    for (const auto& delta : deltas) {
      Configuration moved = a;
      moved[agent] = t.point_from(e, a[agent].vertex(), delta / g.edge(e).length);
      row.push_back(sup_distance(g, base, plan(t, moved, b).combined));
    }
    out.push_back(std::move(row));
  }
  return out;
}

}  // namespace confplan

#pragma once

#include <algorithm>
#include <optional>
#include <vector>

#include "confplan/planner.hpp"

namespace confplan {

struct BumpParams {
  Rational epsilon;

  /// 0.1 x the shortest edge.
  static BumpParams defaults(const Graph& g) { return BumpParams{g.shortest_edge_length() / 10}; }

  void validate(const Graph& g) const {
    if (epsilon <= 0) throw Error(Errc::InvalidArgument, "epsilon must be positive");
    if (2 * epsilon >= g.shortest_edge_length())
      throw Error(Errc::InvalidArgument, "epsilon must be below half the shortest edge length");
  }
};

namespace detail {

inline Rational bump(const Rational& d, const Rational& eps) {
  return d >= eps ? Rational(0) : Rational(1 - d / eps);
}

}  // namespace detail

/// b_j = max(0, 1 - d_j/eps), d_j the distance from agent j to the nearest essential vertex.
inline std::vector<Rational> vertex_proximity(const RootedTree& t, const Configuration& c, const BumpParams& eps) {
  eps.validate(t.graph());
  const auto essential = essential_vertices(t.graph());
  std::vector<Rational> out;
  for (const auto& p : c) {
    std::optional<Rational> best;
    for (std::size_t v : essential) {
      Rational d = t.distance(p, GraphPoint::at_vertex(v));
      if (!best || d < *best) best = std::move(d);
    }
    out.push_back(best ? detail::bump(*best, eps.epsilon) : Rational(0));
  }
  return out;
}

/// q_i = probability that exactly i of independent events with probabilities b_j occur.
inline std::vector<Rational> occupancy_weights(const std::vector<Rational>& b) {
  std::vector<Rational> q{Rational(1)};
  for (const auto& p : b) {
    if (p < 0 || p > 1) throw Error(Errc::InvalidArgument, "weights must lie in [0,1]");
    std::vector<Rational> next(q.size() + 1, Rational(0));
    for (std::size_t i = 0; i < q.size(); ++i) {
      next[i] += q[i] * (1 - p);
      next[i + 1] += q[i] * p;
    }
    q = std::move(next);
  }
  return q;
}

/// One agent that may be pulled onto an essential vertex, with its weight in (0,1].
struct SnapCandidate {
  std::size_t agent;
  std::size_t vertex;
  Rational weight;
};

/// Per essential vertex v, the agent nearest to v (distance d1) with weight
/// bump(d1) * min(1, (d2 - d1)/d1), d2 the distance of the runner-up (factor 1 when d1 = 0 or
/// nobody else exists). The weight vanishes before two agents can tie for v, so the candidate is
/// locally unique and its straight run to v is never blocked.
inline std::vector<SnapCandidate> snap_candidates(const RootedTree& t, const Configuration& c, const BumpParams& eps) {
  eps.validate(t.graph());
  std::vector<SnapCandidate> out;
  for (std::size_t v : essential_vertices(t.graph())) {
    const GraphPoint vp = GraphPoint::at_vertex(v);
    std::optional<std::size_t> first;
    Rational d1, d2;
    bool have_second = false;
    for (std::size_t j = 0; j < c.size(); ++j) {
      Rational d = t.distance(c[j], vp);
      if (!first || d < d1) {
        if (first) {
          d2 = d1;
          have_second = true;
        }
        first = j;
        d1 = std::move(d);
      } else if (!have_second || d < d2) {
        d2 = std::move(d);
        have_second = true;
      }
    }
    if (!first) continue;
    Rational w = detail::bump(d1, eps.epsilon);
    if (w == 0) continue;
    if (d1 > 0 && have_second) {
      const Rational gate = (d2 - d1) / d1;
      if (gate < 1) w *= gate;
    }
    if (w > 0) out.push_back(SnapCandidate{*first, v, std::move(w)});
  }
  return out;
}

enum class Blend {
  /// Pooled candidate weights w_(1) >= ... >= w_(r); p_k = w_(k) - w_(k+1).
  Threshold,
  /// p_k = sum over i+j=k of q_i(a) q_j(b) from occupancy_weights, tail folded into k = 2m.
  ExactCount,
};

struct RandomEntry {
  Rational p;
  Trajectory path;
  /// Whether `path` is the k-th snapped section; false means the unsnapped plan was used.
  bool snapped = false;
  std::size_t snapped_a = 0;
  std::size_t snapped_b = 0;
};

struct RandomPlan {
  std::vector<RandomEntry> entries;

  Rational total() const {
    Rational s(0);
    for (const auto& e : entries) s += e.p;
    return s;
  }
};

namespace detail {

struct PooledCandidate {
  bool side_b;
  SnapCandidate c;
};

inline std::vector<PooledCandidate> pool(const std::vector<SnapCandidate>& a, const std::vector<SnapCandidate>& b) {
  std::vector<PooledCandidate> out;
  for (const auto& c : a) out.push_back({false, c});
  for (const auto& c : b) out.push_back({true, c});
  std::stable_sort(out.begin(), out.end(), [](const PooledCandidate& x, const PooledCandidate& y) {
    if (x.c.weight != y.c.weight) return x.c.weight > y.c.weight;
    if (x.side_b != y.side_b) return !x.side_b;
    return x.c.agent < y.c.agent;
  });
  return out;
}

// Moves the chosen agents onto their vertices one at a time. Throws SnapInfeasible if the result
// is not a collision-free motion.
inline std::pair<Trajectory, Configuration> snap(const RootedTree& t, const Configuration& c, const std::vector<SnapCandidate>& chosen) {
  MoveRecorder rec(t, c);
  for (const auto& s : chosen) rec.move_to(s.agent, GraphPoint::at_vertex(s.vertex));
  Trajectory tr = rec.finish();
  const Configuration& end = rec.current();
  for (std::size_t i = 0; i < end.size(); ++i)
    for (std::size_t j = i + 1; j < end.size(); ++j)
      if (end[i] == end[j]) throw Error(Errc::SnapInfeasible, "snapping would put two agents on one vertex");
  if (!check_collision_free(t.graph(), tr).clear) throw Error(Errc::SnapInfeasible, "snapping motion collides");
  return {std::move(tr), end};
}

inline Trajectory snapped_plan(const RootedTree& t, const Configuration& a, const Configuration& b,
                               const std::vector<SnapCandidate>& snap_a, const std::vector<SnapCandidate>& snap_b) {
  auto [to_a, a_snapped] = snap(t, a, snap_a);
  auto [to_b, b_snapped] = snap(t, b, snap_b);
  Trajectory core = plan(t, a_snapped, b_snapped).combined;
  if (!snap_a.empty()) core = concat(to_a, core);
  if (!snap_b.empty()) core = concat(core, reverse(to_b));
  return normalize_time(t.graph(), core);
}

}  // namespace detail

/// (2m+1)-valued random motion from `a` to `b`: entry k blends the plan between the snapped
/// configurations that put k agents (over both ends) on essential vertices.
inline RandomPlan random_plan(const RootedTree& t, const Configuration& a, const Configuration& b, const BumpParams& eps,
                              Blend blend = Blend::Threshold) {
  if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "start and goal have different agent counts");
  detail::require_essential_vertex(t);
  eps.validate(t.graph());
  validate_configuration(t.graph(), a);
  validate_configuration(t.graph(), b);
  const std::size_t slots = 2 * essential_count(t.graph()) + 1;

  const auto cand_a = snap_candidates(t, a, eps);
  const auto cand_b = snap_candidates(t, b, eps);
  const auto pooled = detail::pool(cand_a, cand_b);

  std::vector<Rational> p(slots, Rational(0));
  if (blend == Blend::Threshold) {
    for (std::size_t k = 0; k <= pooled.size(); ++k) {
      const Rational hi = k == 0 ? Rational(1) : pooled[k - 1].c.weight;
      const Rational lo = k == pooled.size() ? Rational(0) : pooled[k].c.weight;
      p[k] = hi - lo;
    }
  } else {
    const auto qa = occupancy_weights(vertex_proximity(t, a, eps));
    const auto qb = occupancy_weights(vertex_proximity(t, b, eps));
    for (std::size_t i = 0; i < qa.size(); ++i)
      for (std::size_t j = 0; j < qb.size(); ++j) p[std::min(i + j, slots - 1)] += qa[i] * qb[j];
  }

  std::optional<Trajectory> plain;
  auto unsnapped = [&]() -> const Trajectory& {
    if (!plain) plain = plan(t, a, b).combined;
    return *plain;
  };

  RandomPlan out;
  for (std::size_t k = 0; k < slots; ++k) {
    RandomEntry entry;
    entry.p = p[k];
    if (p[k] > 0 && k <= pooled.size()) {
      std::vector<SnapCandidate> sa, sb;
      for (std::size_t i = 0; i < k; ++i) (pooled[i].side_b ? sb : sa).push_back(pooled[i].c);
      try {
        entry.path = detail::snapped_plan(t, a, b, sa, sb);
        entry.snapped = true;
        entry.snapped_a = sa.size();
        entry.snapped_b = sb.size();
      } catch (const Error& e) {
        if (e.code() != Errc::SnapInfeasible) throw;
      }
    }
    if (!entry.snapped) entry.path = unsnapped();
    out.entries.push_back(std::move(entry));
  }
  return out;
}

}  // namespace confplan

#pragma once

#include <algorithm>
#include <numeric>
#include <vector>

#include "confplan/rooted_tree.hpp"
#include "confplan/trajectory.hpp"

namespace confplan {

namespace detail {

// Records one-agent-at-a-time motions along tree geodesics. Time is the running arc length and
// is rescaled onto [0,1] by finish().
class MoveRecorder {
 public:
  MoveRecorder(const RootedTree& tree, Configuration start)
      : tree_(tree), start_(start), current_(std::move(start)), schedules_(current_.size()) {
    for (std::size_t i = 0; i < current_.size(); ++i) schedules_[i].push_back(Breakpoint{Rational(0), current_[i]});
  }

  void move_to(std::size_t agent, const GraphPoint& target) {
    const auto path = tree_.route(current_[agent], target);
    if (path.size() < 2) return;
    Schedule& s = schedules_[agent];
    if (s.back().time < clock_) s.push_back(Breakpoint{clock_, current_[agent]});
    for (std::size_t k = 1; k < path.size(); ++k) {
      clock_ += detail::segment_length(tree_.graph(), path[k - 1], path[k]);
      s.push_back(Breakpoint{clock_, path[k]});
    }
    current_[agent] = target;
    ++transfers_;
  }

  const Configuration& current() const { return current_; }
  std::size_t transfers() const { return transfers_; }

  Trajectory finish() const {
    if (clock_ == 0) return Trajectory::constant(start_);
    Trajectory tr;
    tr.agents = schedules_;
    for (std::size_t i = 0; i < tr.agents.size(); ++i) {
      Schedule& s = tr.agents[i];
      if (s.back().time < clock_) s.push_back(Breakpoint{clock_, current_[i]});
      for (auto& bp : s) bp.time /= clock_;
    }
    return tr;
  }

 private:
  const RootedTree& tree_;
  Configuration start_;
  Configuration current_;
  std::vector<Schedule> schedules_;
  Rational clock_{0};
  std::size_t transfers_ = 0;
};

inline void require_essential_vertex(const RootedTree& t) {
  if (essential_count(t.graph()) == 0)
    throw Error(Errc::NoEssentialVertex, "the tree has no vertex of degree >= 3, so F(T,n) may be disconnected");
}

inline bool on_root_edge_interior(const RootedTree& t, const GraphPoint& p) {
  return !p.is_vertex() && p.edge() == t.root_edge();
}

}  // namespace detail

/// Parking slot k (1-based) of n: the point of the root edge at fraction k/(n+1) from the root.
inline GraphPoint root_slot(const RootedTree& t, std::size_t k, std::size_t n) {
  return t.point_from(t.root_edge(), t.root(), ratio(static_cast<long>(k), static_cast<long>(n + 1)));
}

/// Indices (ascending) of the points of `c` that have no other point of `c` below them.
inline std::vector<std::size_t> minimal_points(const RootedTree& t, const Configuration& c) {
  std::vector<std::size_t> out;
  for (std::size_t j = 0; j < c.size(); ++j) {
    bool minimal = true;
    for (std::size_t k = 0; k < c.size() && minimal; ++k)
      if (k != j && t.precedes(c[j], c[k])) minimal = false;
    if (minimal) out.push_back(j);
  }
  return out;
}

struct Descent {
  Trajectory trajectory;
  /// Final configuration: agent order[k] sits in slot k+1.
  Configuration parked;
  std::vector<std::size_t> order;
};

/// Moves every agent onto the interior of the root edge, one agent at a time.
///
/// Agents already on the root edge (or at the root) keep their order and are packed into the
/// lowest slots first; upward moves go top-down, then downward moves bottom-up, so nobody passes
/// anybody. The rest follow rounds of minimal points in ascending index order, each dropping to
/// the next free slot above the ones already taken.
inline Descent descend_all(const RootedTree& t, const Configuration& c) {
  detail::require_essential_vertex(t);
  validate_configuration(t.graph(), c);
  const std::size_t n = c.size();
  detail::MoveRecorder rec(t, c);
  std::vector<char> parked(n, 0);
  std::vector<std::size_t> order;

  std::vector<std::size_t> chain;
  for (std::size_t i = 0; i < n; ++i)
    if (detail::on_root_edge_interior(t, c[i]) || (c[i].is_vertex() && c[i].vertex() == t.root())) chain.push_back(i);
  std::sort(chain.begin(), chain.end(), [&](std::size_t a, std::size_t b) { return t.height(c[a]) < t.height(c[b]); });
  std::vector<GraphPoint> chain_slot;
  for (std::size_t k = 0; k < chain.size(); ++k) chain_slot.push_back(root_slot(t, k + 1, n));
  for (std::size_t k = chain.size(); k-- > 0;)
    if (t.height(c[chain[k]]) < t.height(chain_slot[k])) rec.move_to(chain[k], chain_slot[k]);
  for (std::size_t k = 0; k < chain.size(); ++k) {
    if (t.height(c[chain[k]]) > t.height(chain_slot[k])) rec.move_to(chain[k], chain_slot[k]);
    parked[chain[k]] = 1;
    order.push_back(chain[k]);
  }

  while (order.size() < n) {
    std::vector<std::size_t> round;
    for (std::size_t j = 0; j < n; ++j) {
      if (parked[j]) continue;
      bool minimal = true;
      for (std::size_t k = 0; k < n && minimal; ++k)
        if (k != j && !parked[k] && t.precedes(c[j], c[k])) minimal = false;
      if (minimal) round.push_back(j);
    }
    for (std::size_t j : round) {
      rec.move_to(j, root_slot(t, order.size() + 1, n));
      parked[j] = 1;
      order.push_back(j);
    }
  }
  return Descent{rec.finish(), rec.current(), std::move(order)};
}

/// Agents on the root edge listed from the root upwards (deepest first).
inline std::vector<std::size_t> root_edge_order(const RootedTree& t, const Configuration& c) {
  for (const auto& p : c)
    if (!detail::on_root_edge_interior(t, p)) throw Error(Errc::NotOnRootEdge, "configuration leaves the interior of the root edge");
  validate_configuration(t.graph(), c);
  std::vector<std::size_t> order(c.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return t.height(c[a]) < t.height(c[b]); });
  return order;
}

/// First essential vertex above the root edge; the corridor below it has only degree-2 vertices.
inline std::size_t permutation_hub(const RootedTree& t) {
  detail::require_essential_vertex(t);
  std::size_t v = t.root_child();
  while (t.graph().degree(v) == 2) v = t.upper_end(t.ascending_edges(v).front());
  if (t.graph().degree(v) < 3) throw Error(Errc::InvariantViolation, "no essential vertex above the root edge");
  return v;
}

struct PermutationMotion {
  Trajectory trajectory;
  /// Single-agent transfers between rest positions.
  std::size_t transfers = 0;
};

/// Reorders agents parked in the canonical root-edge slots so that `target[k]` ends in slot k+1.
///
/// Two ascending edges at the hub vertex act as stacks. Everybody is first pushed onto stack one;
/// then for each slot from the bottom up the wanted agent is exposed by moving the agents above it
/// onto stack two, sent down to its slot, and stack two is poured back.
inline PermutationMotion permute_on_root(const RootedTree& t, const Configuration& c, const std::vector<std::size_t>& target) {
  const std::size_t n = c.size();
  const auto order = root_edge_order(t, c);
  for (std::size_t k = 0; k < n; ++k)
    if (c[order[k]] != root_slot(t, k + 1, n)) throw Error(Errc::InvalidArgument, "agents must sit in the canonical root-edge slots");
  if (target.size() != n) throw Error(Errc::DimensionMismatch, "target permutation has the wrong length");
  std::vector<std::size_t> check = target;
  std::sort(check.begin(), check.end());
  for (std::size_t k = 0; k < n; ++k)
    if (check[k] != k) throw Error(Errc::InvalidArgument, "target is not a permutation of the agents");
  if (order == target) return PermutationMotion{Trajectory::constant(c), 0};

  const std::size_t hub = permutation_hub(t);
  const auto& up = t.ascending_edges(hub);
  const std::size_t buffer_edge[2] = {up[0], up[1]};
  std::vector<std::size_t> stack[2];
  detail::MoveRecorder rec(t, c);
  const Rational denom(static_cast<long>(n + 1));

  auto push = [&](int which, std::size_t agent) {
    const long level = static_cast<long>(n - stack[which].size());
    rec.move_to(agent, t.point_from(buffer_edge[which], hub, Rational(level) / denom));
    stack[which].push_back(agent);
  };
  auto pop = [&](int which) {
    const std::size_t agent = stack[which].back();
    stack[which].pop_back();
    return agent;
  };

  for (std::size_t k = n; k-- > 0;) push(0, order[k]);
  for (std::size_t k = 0; k < n; ++k) {
    while (stack[0].back() != target[k]) push(1, pop(0));
    rec.move_to(pop(0), root_slot(t, k + 1, n));
    while (!stack[1].empty()) push(0, pop(1));
  }
  return PermutationMotion{rec.finish(), rec.transfers()};
}

struct PlanStages {
  Trajectory descent_a;  // a -> a'
  Trajectory permute;    // a' -> a''
  Trajectory slide;      // a'' -> b'
  Trajectory descent_b;  // b -> b'
  Trajectory combined;   // a -> b
};

/// Collision-free motion from `a` to `b` on a tree with an essential vertex: park both ends on the
/// root edge, permute the parked agents into the order of the second parking, slide, and undo the
/// second parking.
inline PlanStages plan(const RootedTree& t, const Configuration& a, const Configuration& b) {
  if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "start and goal have different agent counts");
  detail::require_essential_vertex(t);
  const Graph& g = t.graph();
  Descent da = descend_all(t, a);
  Descent db = descend_all(t, b);
  PermutationMotion perm = permute_on_root(t, da.parked, db.order);

  const Configuration mid = endpoints(perm.trajectory).second;
  Trajectory slide;
  for (std::size_t i = 0; i < mid.size(); ++i) {
    if (!g.common_edge(mid[i], db.parked[i])) throw Error(Errc::InvariantViolation, "slide stage leaves the root edge");
    slide.agents.push_back({Breakpoint{Rational(0), mid[i]}, Breakpoint{Rational(1), db.parked[i]}});
  }

  PlanStages out;
  out.combined = normalize_time(g, concat(da.trajectory, concat(perm.trajectory, concat(slide, reverse(db.trajectory)))));
  out.descent_a = std::move(da.trajectory);
  out.permute = std::move(perm.trajectory);
  out.slide = std::move(slide);
  out.descent_b = std::move(db.trajectory);
  return out;
}

/// Number of agents sitting exactly on essential vertices (the stratum S_i holding c).
inline std::size_t stratum(const RootedTree& t, const Configuration& c) {
  std::size_t count = 0;
  for (const auto& p : c)
    if (p.is_vertex() && t.graph().degree(p.vertex()) >= 3) ++count;
  return count;
}

/// k such that (a, b) lies in Y_k = union over i + j = k of S_i x S_j.
inline std::size_t domain_index(const RootedTree& t, const Configuration& a, const Configuration& b) {
  return stratum(t, a) + stratum(t, b);
}

}  // namespace confplan

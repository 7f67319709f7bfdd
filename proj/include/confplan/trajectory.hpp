#pragma once

#include <algorithm>
#include <optional>
#include <utility>
#include <vector>

#include "confplan/graph.hpp"

namespace confplan {

struct Breakpoint {
  Rational time;
  GraphPoint point;

  friend bool operator==(const Breakpoint& a, const Breakpoint& b) { return a.time == b.time && a.point == b.point; }
};

/// Piecewise-linear schedule of one agent: times strictly increase from 0 to 1, consecutive
/// points share a closed edge and the agent moves at constant speed along it in between.
using Schedule = std::vector<Breakpoint>;

struct Trajectory {
  std::vector<Schedule> agents;

  std::size_t agent_count() const { return agents.size(); }

  /// Every agent parked at its position in `c` for the whole unit interval.
  static Trajectory constant(const Configuration& c) {
    Trajectory tr;
    for (const auto& p : c) tr.agents.push_back({Breakpoint{Rational(0), p}, Breakpoint{Rational(1), p}});
    return tr;
  }

  friend bool operator==(const Trajectory& a, const Trajectory& b) { return a.agents == b.agents; }
};

/// Outcome of the exact collision check. On a collision, `time`, `agents` and `position` describe
/// the earliest coincidence (ties broken by the smallest agent pair).
struct CollisionCertificate {
  bool clear = true;
  Rational time;
  std::pair<std::size_t, std::size_t> agents{0, 0};
  GraphPoint position;
};

inline void validate_trajectory(const Graph& g, const Trajectory& tr) {
  auto fail = [](const std::string& why) { return Error(Errc::MalformedTrajectory, why); };
  for (std::size_t i = 0; i < tr.agents.size(); ++i) {
    const Schedule& s = tr.agents[i];
    const std::string who = "agent " + std::to_string(i) + ": ";
    if (s.size() < 2) throw fail(who + "needs breakpoints at times 0 and 1");
    if (s.front().time != 0 || s.back().time != 1) throw fail(who + "schedule must span [0,1]");
    for (std::size_t k = 0; k < s.size(); ++k) {
      try {
        g.check_point(s[k].point);
      } catch (const Error& e) {
        throw fail(who + e.what());
      }
      if (k == 0) continue;
      if (s[k].time <= s[k - 1].time) throw fail(who + "times must strictly increase");
      if (!g.common_edge(s[k - 1].point, s[k].point)) throw fail(who + "consecutive breakpoints do not share an edge");
    }
  }
}

/// Start and end configurations.
inline std::pair<Configuration, Configuration> endpoints(const Trajectory& tr) {
  Configuration start, end;
  for (const auto& s : tr.agents) {
    if (s.empty()) throw Error(Errc::MalformedTrajectory, "empty schedule");
    start.push_back(s.front().point);
    end.push_back(s.back().point);
  }
  return {std::move(start), std::move(end)};
}

/// Position of one agent at time `t`, interpolated exactly.
inline GraphPoint position_at(const Graph& g, const Schedule& s, const Rational& t) {
  auto it = std::lower_bound(s.begin(), s.end(), t, [](const Breakpoint& b, const Rational& key) { return b.time < key; });
  if (it == s.end()) return s.back().point;
  if (it->time == t || it == s.begin()) return it->point;
  const Breakpoint& hi = *it;
  const Breakpoint& lo = *(it - 1);
  if (lo.point == hi.point) return lo.point;
  const std::size_t e = *g.common_edge(lo.point, hi.point);
  const Rational a = g.coordinate(lo.point, e);
  const Rational b = g.coordinate(hi.point, e);
  return g.point(e, a + (b - a) * (t - lo.time) / (hi.time - lo.time));
}

/// `a` then `b`, each squeezed into half of the unit interval.
inline Trajectory concat(const Trajectory& a, const Trajectory& b) {
  if (a.agent_count() != b.agent_count()) throw Error(Errc::AgentCountMismatch, "concat of trajectories with different agent counts");
  if (endpoints(a).second != endpoints(b).first) throw Error(Errc::EndpointMismatch, "end of the first trajectory differs from start of the second");
  const Rational half(1, 2);
  Trajectory out;
  out.agents.resize(a.agent_count());
  for (std::size_t i = 0; i < a.agent_count(); ++i) {
    Schedule& s = out.agents[i];
    for (const auto& bp : a.agents[i]) s.push_back(Breakpoint{bp.time * half, bp.point});
    for (std::size_t k = 1; k < b.agents[i].size(); ++k)
      s.push_back(Breakpoint{half + b.agents[i][k].time * half, b.agents[i][k].point});
  }
  return out;
}

inline Trajectory reverse(const Trajectory& tr) {
  Trajectory out;
  for (const auto& s : tr.agents) {
    Schedule r;
    r.reserve(s.size());
    for (auto it = s.rbegin(); it != s.rend(); ++it) r.push_back(Breakpoint{1 - it->time, it->point});
    out.agents.push_back(std::move(r));
  }
  return out;
}

namespace detail {

inline Rational segment_length(const Graph& g, const GraphPoint& p, const GraphPoint& q) {
  if (p == q) return Rational(0);
  const std::size_t e = *g.common_edge(p, q);
  return abs_value(g.coordinate(q, e) - g.coordinate(p, e)) * g.edge(e).length;
}

// Middle breakpoint redundant: all three on one closed edge and linear in time.
inline bool collinear(const Graph& g, const Breakpoint& a, const Breakpoint& b, const Breakpoint& c) {
  if (a.point == b.point && b.point == c.point) return true;
  for (const GraphPoint* anchor : {&a.point, &b.point, &c.point}) {
    std::vector<std::size_t> candidates;
    if (anchor->is_vertex()) {
      candidates = g.incident_edges(anchor->vertex());
    } else {
      candidates = {anchor->edge()};
    }
    for (std::size_t e : candidates) {
      if (!g.on_closure(a.point, e) || !g.on_closure(b.point, e) || !g.on_closure(c.point, e)) continue;
      const Rational ta = g.coordinate(a.point, e), tb = g.coordinate(b.point, e), tc = g.coordinate(c.point, e);
      return (tb - ta) * (c.time - a.time) == (tc - ta) * (b.time - a.time);
    }
  }
  return false;
}

}  // namespace detail

/// Canonical form of a motion: time is reparametrised by the cumulative arc length travelled by
/// all agents together, motionless spans collapse, and breakpoints in the middle of straight runs
/// are dropped. Two trajectories that differ only by a monotone change of time normalise to the
/// same breakpoint lists.
inline Trajectory normalize_time(const Graph& g, const Trajectory& tr) {
  validate_trajectory(g, tr);
  std::vector<Rational> events;
  for (const auto& s : tr.agents)
    for (const auto& bp : s) events.push_back(bp.time);
  std::sort(events.begin(), events.end());
  events.erase(std::unique(events.begin(), events.end()), events.end());

  const std::size_t n = tr.agent_count();
  std::vector<std::vector<GraphPoint>> at(n);
  for (std::size_t i = 0; i < n; ++i) {
    const Schedule& s = tr.agents[i];
    std::size_t k = 0;
    for (const auto& t : events) {
      while (k + 1 < s.size() && s[k + 1].time <= t) ++k;
      at[i].push_back(s[k].time == t ? s[k].point : position_at(g, s, t));
    }
  }

  std::vector<Rational> cumulative{Rational(0)};
  for (std::size_t k = 1; k < events.size(); ++k) {
    Rational step(0);
    for (std::size_t i = 0; i < n; ++i) step += detail::segment_length(g, at[i][k - 1], at[i][k]);
    cumulative.push_back(cumulative.back() + step);
  }
  const Rational total = cumulative.back();

  Trajectory out;
  out.agents.resize(n);
  if (total == 0) {
    for (std::size_t i = 0; i < n; ++i)
      out.agents[i] = {Breakpoint{Rational(0), at[i].front()}, Breakpoint{Rational(1), at[i].front()}};
    return out;
  }
  for (std::size_t i = 0; i < n; ++i) {
    Schedule& s = out.agents[i];
    for (std::size_t k = 0; k < events.size(); ++k) {
      if (k > 0 && cumulative[k] == cumulative[k - 1]) continue;
      Breakpoint bp{cumulative[k] / total, at[i][k]};
      while (s.size() >= 2 && detail::collinear(g, s[s.size() - 2], s.back(), bp)) s.pop_back();
      s.push_back(std::move(bp));
    }
  }
  return out;
}

namespace detail {

// Motion of one agent over a sub-interval: parked at `from`, or moving along edge `e` with
// parameter going linearly from `from_t` to `to_t`.
struct Piece {
  bool moving = false;
  GraphPoint from;
  std::size_t e = 0;
  Rational from_t, to_t;
};

inline Piece make_piece(const Graph& g, const GraphPoint& p, const GraphPoint& q) {
  Piece piece;
  piece.from = p;
  if (p == q) return piece;
  piece.moving = true;
  piece.e = *g.common_edge(p, q);
  piece.from_t = g.coordinate(p, piece.e);
  piece.to_t = g.coordinate(q, piece.e);
  return piece;
}

// Fraction s in [0,1] at which a moving piece reaches parameter `target`, if any.
inline std::optional<Rational> reach(const Piece& piece, const Rational& target) {
  const Rational delta = piece.to_t - piece.from_t;
  Rational s = (target - piece.from_t) / delta;
  if (s < 0 || s > 1) return std::nullopt;
  return s;
}

// Earliest fraction of the interval at which the two pieces coincide.
inline std::optional<Rational> first_coincidence(const Graph& g, const Piece& a, const Piece& b) {
  if (!a.moving && !b.moving) return a.from == b.from ? std::optional<Rational>(Rational(0)) : std::nullopt;
  if (!a.moving) return first_coincidence(g, b, a);
  if (!b.moving) {
    if (!g.on_closure(b.from, a.e)) return std::nullopt;
    return reach(a, g.coordinate(b.from, a.e));
  }
  if (a.e == b.e) {
    const Rational da = a.to_t - a.from_t, db = b.to_t - b.from_t;
    if (da == db) return a.from_t == b.from_t ? std::optional<Rational>(Rational(0)) : std::nullopt;
    Rational s = (b.from_t - a.from_t) / (da - db);
    if (s < 0 || s > 1) return std::nullopt;
    return s;
  }
  const Edge& ea = g.edge(a.e);
  for (std::size_t w : {ea.u, ea.v}) {
    const GraphPoint wp = GraphPoint::at_vertex(w);
    if (!g.on_closure(wp, b.e)) continue;
    auto sa = reach(a, g.coordinate(wp, a.e));
    auto sb = reach(b, g.coordinate(wp, b.e));
    if (sa && sb && *sa == *sb) return sa;
  }
  return std::nullopt;
}

// Calls f(t0, t1, piece_a, piece_b) for every interval of the merged breakpoint grid.
template <typename F>
void for_each_common_interval(const Graph& g, const Schedule& a, const Schedule& b, F&& f) {
  std::vector<Rational> grid;
  grid.reserve(a.size() + b.size());
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    const Rational* next;
    if (j == b.size() || (i < a.size() && a[i].time <= b[j].time)) {
      next = &a[i].time;
      if (j < b.size() && b[j].time == a[i].time) ++j;
      ++i;
    } else {
      next = &b[j].time;
      ++j;
    }
    grid.push_back(*next);
  }
  std::size_t ka = 0, kb = 0;
  auto locate = [&g](const Schedule& s, std::size_t& k, const Rational& t) {
    while (k + 1 < s.size() && s[k + 1].time <= t) ++k;
    if (s[k].time == t) return s[k].point;
    const Breakpoint& lo = s[k];
    const Breakpoint& hi = s[k + 1];
    if (lo.point == hi.point) return lo.point;
    const std::size_t e = *g.common_edge(lo.point, hi.point);
    const Rational ta = g.coordinate(lo.point, e), tb = g.coordinate(hi.point, e);
    return g.point(e, ta + (tb - ta) * (t - lo.time) / (hi.time - lo.time));
  };
  GraphPoint pa = locate(a, ka, grid.front()), pb = locate(b, kb, grid.front());
  for (std::size_t k = 1; k < grid.size(); ++k) {
    GraphPoint qa = locate(a, ka, grid[k]), qb = locate(b, kb, grid[k]);
    if (!f(grid[k - 1], grid[k], pa, qa, pb, qb)) return;
    pa = std::move(qa);
    pb = std::move(qb);
  }
}

}  // namespace detail

/// Exact collision check: on every interval of the merged breakpoint grid both agents move
/// linearly inside single closed edges, so coincidence is a linear equation solved in rationals.
inline CollisionCertificate check_collision_free(const Graph& g, const Trajectory& tr) {
  validate_trajectory(g, tr);
  CollisionCertificate cert;
  for (std::size_t i = 0; i < tr.agent_count(); ++i) {
    for (std::size_t j = i + 1; j < tr.agent_count(); ++j) {
      detail::for_each_common_interval(
          g, tr.agents[i], tr.agents[j],
          [&](const Rational& t0, const Rational& t1, const GraphPoint& pa, const GraphPoint& qa, const GraphPoint& pb,
              const GraphPoint& qb) {
            if (!cert.clear && cert.time < t0) return false;
            const auto a = detail::make_piece(g, pa, qa);
            const auto b = detail::make_piece(g, pb, qb);
            auto s = detail::first_coincidence(g, a, b);
            if (!s) return true;
            Rational t = t0 + (t1 - t0) * *s;
            if (cert.clear || t < cert.time) {
              cert.clear = false;
              cert.time = t;
              cert.agents = {i, j};
              cert.position = a.moving ? g.point(a.e, a.from_t + (a.to_t - a.from_t) * *s) : a.from;
            }
            return false;
          });
    }
  }
  return cert;
}

/// Largest distance between simultaneous positions of the same agent in the two motions.
inline Rational sup_distance(const Graph& g, const Trajectory& x, const Trajectory& y) {
  if (x.agent_count() != y.agent_count()) throw Error(Errc::AgentCountMismatch, "sup_distance of trajectories with different agent counts");
  validate_trajectory(g, x);
  validate_trajectory(g, y);
  Rational best(0);
  for (std::size_t i = 0; i < x.agent_count(); ++i) {
    detail::for_each_common_interval(
        g, x.agents[i], y.agents[i],
        [&](const Rational& t0, const Rational& t1, const GraphPoint& pa, const GraphPoint& qa, const GraphPoint& pb,
            const GraphPoint& qb) {
          // Distance along the interval is the minimum of finitely many affine functions of the
          // interval fraction s (plus |direct| on a shared edge); its maximum sits at an end or
          // at a crossing of two of them.
          struct Affine {
            Rational c0, c1;  // value = c0 + c1 * s
          };
          const auto a = detail::make_piece(g, pa, qa);
          const auto b = detail::make_piece(g, pb, qb);
          auto ends = [&g](const detail::Piece& p) {
            std::vector<std::pair<std::size_t, Affine>> out;
            if (!p.moving && p.from.is_vertex()) {
              out.push_back({p.from.vertex(), Affine{Rational(0), Rational(0)}});
              return out;
            }
            const std::size_t e = p.moving ? p.e : p.from.edge();
            const Rational t0 = p.moving ? p.from_t : p.from.t();
            const Rational dt = p.moving ? Rational(p.to_t - p.from_t) : Rational(0);
            const Edge& ed = g.edge(e);
            out.push_back({ed.u, Affine{t0 * ed.length, dt * ed.length}});
            out.push_back({ed.v, Affine{(1 - t0) * ed.length, -dt * ed.length}});
            return out;
          };
          std::vector<Affine> fns;
          for (const auto& [va, fa] : ends(a))
            for (const auto& [vb, fb] : ends(b))
              fns.push_back(Affine{fa.c0 + g.vertex_distance(va, vb) + fb.c0, fa.c1 + fb.c1});
          auto along = [&g](const detail::Piece& p, std::size_t e) -> std::optional<Affine> {
            if (p.moving) {
              if (p.e != e) return std::nullopt;
              return Affine{p.from_t, p.to_t - p.from_t};
            }
            if (!g.on_closure(p.from, e)) return std::nullopt;
            return Affine{g.coordinate(p.from, e), Rational(0)};
          };
          std::vector<std::size_t> shared;
          if (a.moving) shared.push_back(a.e);
          else if (!a.from.is_vertex()) shared.push_back(a.from.edge());
          else shared = g.incident_edges(a.from.vertex());
          for (std::size_t e : shared) {
            auto fa = along(a, e), fb = along(b, e);
            if (!fa || !fb) continue;
            const Rational& len = g.edge(e).length;
            fns.push_back(Affine{(fa->c0 - fb->c0) * len, (fa->c1 - fb->c1) * len});
            fns.push_back(Affine{(fb->c0 - fa->c0) * len, (fb->c1 - fa->c1) * len});
          }
          std::vector<Rational> candidates{Rational(0), Rational(1)};
          for (std::size_t p = 0; p < fns.size(); ++p)
            for (std::size_t q = p + 1; q < fns.size(); ++q) {
              if (fns[p].c1 == fns[q].c1) continue;
              Rational s = (fns[q].c0 - fns[p].c0) / (fns[p].c1 - fns[q].c1);
              if (s > 0 && s < 1) candidates.push_back(std::move(s));
            }
          for (const auto& s : candidates) {
            const Rational t = t0 + (t1 - t0) * s;
            Rational d = graph_distance(g, position_at(g, x.agents[i], t), position_at(g, y.agents[i], t));
            if (d > best) best = std::move(d);
          }
          return true;
        });
  }
  return best;
}

}  // namespace confplan

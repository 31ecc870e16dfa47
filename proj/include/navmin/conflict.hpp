#pragma once

#include <algorithm>
#include <cstdlib>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "navmin/graph.hpp"

namespace navmin {

/// Discrete-time script: one vertex per step, holding the last vertex after
/// the script ends.
using ScriptedPath = std::vector<VertexId>;

/// Possible positions per step; entry k is the set at step k.
using ReachSet = std::vector<std::set<VertexId>>;

/// Positions a robot could occupy after each of `horizon` steps on `nav`,
/// knowing only its start. A vertex without successors keeps the robot there.
inline ReachSet reachable_positions(const DirectedGraph& nav, VertexId start, int horizon) {
  if (horizon < 0) throw std::invalid_argument("horizon must be nonnegative");
  if (!nav.contains(start)) throw std::invalid_argument("unknown start " + to_string(start));
  ReachSet steps{{start}};
  for (int k = 0; k < horizon; ++k) {
    std::set<VertexId> next;
    for (auto v : steps.back()) {
      auto succ = nav.successors(v);
      if (succ.empty())
        next.insert(v);
      else
        next.insert(succ.begin(), succ.end());
    }
    steps.push_back(std::move(next));
  }
  return steps;
}

inline VertexId position_at(const ScriptedPath& p, std::size_t step) {
  return p[std::min(step, p.size() - 1)];
}

/// First step at which the human shares a vertex with any robot. Swapping
/// adjacent cells is not a collision.
inline std::optional<int> earliest_collision(const std::vector<ScriptedPath>& robots,
                                             const ScriptedPath& human) {
  if (human.empty()) throw std::invalid_argument("human path is empty");
  std::size_t horizon = human.size();
  for (const auto& r : robots) {
    if (r.empty()) throw std::invalid_argument("robot path is empty");
    horizon = std::max(horizon, r.size());
  }
  for (std::size_t k = 0; k < horizon; ++k) {
    const VertexId h = position_at(human, k);
    for (const auto& r : robots)
      if (position_at(r, k) == h) return static_cast<int>(k);
  }
  return std::nullopt;
}

/// Two-robot collision puzzle: a navigation graph, robot scripts on it and a
/// human script on the ambient grid.
struct CollisionFixture {
  DirectedGraph graph;
  std::vector<ScriptedPath> robots;
  ScriptedPath human;
};

/// Summary facts checked against each shipped puzzle.
struct FixtureFacts {
  std::size_t vertices = 0;
  std::size_t branching_vertices = 0;
  std::size_t human_steps = 0;        // moves, i.e. positions - 1
  std::size_t overlap_positions = 0;  // human positions that are graph vertices
  std::optional<int> collision;
  bool robots_follow_graph = true;
  bool human_moves_adjacent = true;
};

inline FixtureFacts fixture_facts(const CollisionFixture& f) {
  FixtureFacts facts;
  facts.vertices = f.graph.vertex_count();
  for (auto v : f.graph.vertices())
    if (f.graph.out_degree(v) > 1) ++facts.branching_vertices;
  facts.human_steps = f.human.empty() ? 0 : f.human.size() - 1;
  for (auto v : f.human)
    if (f.graph.contains(v)) ++facts.overlap_positions;
  facts.collision = earliest_collision(f.robots, f.human);
  for (const auto& r : f.robots)
    for (std::size_t i = 0; i + 1 < r.size(); ++i)
      if (!f.graph.has_edge(r[i], r[i + 1])) facts.robots_follow_graph = false;
  for (std::size_t i = 0; i + 1 < f.human.size(); ++i) {
    const int d = std::abs(f.human[i].row - f.human[i + 1].row) +
                  std::abs(f.human[i].col - f.human[i + 1].col);
    if (d != 1) facts.human_moves_adjacent = false;
  }
  return facts;
}

}  // namespace navmin

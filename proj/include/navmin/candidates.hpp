#pragma once

#include <algorithm>
#include <map>
#include <span>
#include <stdexcept>
#include <vector>

#include "navmin/graph.hpp"
#include "navmin/problem.hpp"

namespace navmin {

/// Per-task candidate paths bounding the search space.
struct CandidatePool {
  std::map<Task, std::vector<Path>> paths;
  std::size_t population_cap = 20;

  const std::vector<Path>& at(const Task& t) const {
    auto it = paths.find(t);
    if (it == paths.end()) throw InfeasibleError("no candidates for task " + to_string(t));
    return it->second;
  }

  /// Number of path combinations, saturating at `limit + 1`.
  std::size_t combinations(std::size_t limit) const {
    std::size_t n = 1;
    for (const auto& [t, ps] : paths) {
      if (ps.empty()) return 0;
      if (n > limit / ps.size()) return limit + 1;
      n *= ps.size();
    }
    return n;
  }

  friend bool operator==(const CandidatePool&, const CandidatePool&) = default;
};

/// Candidate paths for one task by repeated shortest-path search on a working
/// copy whose accepted path edges get their weights doubled each round.
///
/// A round ends the loop when its path exceeds the cutoff under the original
/// weights or repeats an earlier candidate.
inline std::vector<Path> build_task_candidates(const DirectedGraph& graph, const Task& task,
                                               double cutoff, std::size_t population_cap) {
  DirectedGraph work = graph;
  std::vector<Path> pool;
  while (pool.size() < population_cap) {
    auto p = shortest_path(work, task.src, task.dst);
    if (!p) throw InfeasibleError("infeasible task " + to_string(task) + ": unreachable");
    if (!within_cutoff(path_cost(graph, *p), cutoff)) break;
    if (std::find(pool.begin(), pool.end(), *p) != pool.end()) break;
    for (std::size_t i = 0; i + 1 < p->size(); ++i) {
      const VertexId u = (*p)[i];
      const VertexId v = (*p)[i + 1];
      work.set_weight(u, v, 2.0 * work.weight(u, v));
    }
    pool.push_back(std::move(*p));
  }
  if (pool.empty())
    throw InfeasibleError("infeasible task " + to_string(task) + ": optimal path exceeds cutoff");
  return pool;
}

inline CandidatePool build_candidates(const DirectedGraph& graph, std::span<const Task> tasks,
                                      const CutoffMap& cutoffs, std::size_t population_cap) {
  if (population_cap < 1) throw std::invalid_argument("population cap must be >= 1");
  CandidatePool pool;
  pool.population_cap = population_cap;
  for (const auto& t : tasks) {
    auto it = cutoffs.find(t);
    if (it == cutoffs.end()) throw std::invalid_argument("no cutoff for task " + to_string(t));
    pool.paths[t] = build_task_candidates(graph, t, it->second, population_cap);
  }
  return pool;
}

}  // namespace navmin

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <compare>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "navmin/graph.hpp"

namespace navmin {

/// A task that cannot be satisfied: unreachable endpoints or no path within
/// its cutoff.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Ordered terminal pair that must stay connected.
struct Task {
  VertexId src;
  VertexId dst;

  Task() = default;
  Task(VertexId s, VertexId d) : src(s), dst(d) {
    if (s == d) throw std::invalid_argument("task endpoints must differ: " + to_string(s));
  }

  friend constexpr auto operator<=>(const Task&, const Task&) = default;
};

inline std::string to_string(const Task& t) { return to_string(t.src) + "->" + to_string(t.dst); }

/// All ordered pairs of distinct terminals, sorted by (src, dst).
inline std::vector<Task> all_ordered_pairs(std::vector<VertexId> terminals) {
  std::sort(terminals.begin(), terminals.end());
  std::vector<Task> tasks;
  for (auto s : terminals)
    for (auto d : terminals)
      if (s != d) tasks.emplace_back(s, d);
  return tasks;
}

/// Nonnegative task weights summing to one.
class TaskWeights {
 public:
  TaskWeights() = default;
  explicit TaskWeights(std::map<Task, double> weights) : weights_(std::move(weights)) {
    double sum = 0.0;
    for (const auto& [task, w] : weights_) {
      if (!(w >= 0.0) || !std::isfinite(w))
        throw std::invalid_argument("negative task weight for " + to_string(task));
      sum += w;
    }
    if (!weights_.empty() && std::fabs(sum - 1.0) > 1e-9)
      throw std::invalid_argument("task weights must sum to 1, got " + std::to_string(sum));
  }

  /// Equal weight 1/k for each of the k tasks.
  static TaskWeights uniform(const std::vector<Task>& tasks) {
    std::map<Task, double> w;
    for (const auto& t : tasks) w[t] = 1.0 / static_cast<double>(tasks.size());
    return TaskWeights(std::move(w));
  }

  double at(const Task& t) const {
    auto it = weights_.find(t);
    if (it == weights_.end()) throw std::invalid_argument("no weight for task " + to_string(t));
    return it->second;
  }

  bool contains(const Task& t) const { return weights_.contains(t); }
  const std::map<Task, double>& values() const { return weights_; }
  std::size_t size() const { return weights_.size(); }

  friend bool operator==(const TaskWeights&, const TaskWeights&) = default;

 private:
  std::map<Task, double> weights_;
};

/// Absolute per-task path cost bound.
using CutoffMap = std::map<Task, double>;

/// Cutoff comparison shared by every module: accept cost equal to the cutoff
/// up to floating-point rounding.
inline bool within_cutoff(double cost, double cutoff) { return cost <= cutoff * (1.0 + 1e-9); }

/// One chosen path per task.
struct Solution {
  std::map<Task, Path> paths;

  std::vector<Path> path_list() const {
    std::vector<Path> result;
    result.reserve(paths.size());
    for (const auto& [task, p] : paths) result.push_back(p);
    return result;
  }

  friend bool operator==(const Solution&, const Solution&) = default;
};

/// How a random instance was produced.
struct Provenance {
  std::uint64_t seed = 0;
  int grid_width = 0;
  int grid_height = 0;
  double drop_vertex_frac = 0.0;
  double drop_edge_frac = 0.0;
  int num_terminals = 0;
  double cutoff_multiplier = 1.0;
  std::vector<VertexId> removed_vertices;
  std::vector<std::pair<VertexId, VertexId>> removed_edges;

  friend bool operator==(const Provenance&, const Provenance&) = default;
};

/// Graph, tasks, cutoffs and weights.
struct ProblemInstance {
  DirectedGraph graph;
  std::vector<Task> tasks;  // sorted by (src, dst)
  CutoffMap cutoffs;
  TaskWeights weights;
  std::optional<Provenance> provenance;

  friend bool operator==(const ProblemInstance&, const ProblemInstance&) = default;
};

/// Builds an instance whose cutoffs are `multiplier` times each task's optimal
/// cost in `graph`. Throws InfeasibleError if a task is unreachable.
inline ProblemInstance make_instance(DirectedGraph graph, std::vector<Task> tasks,
                                     TaskWeights weights, double multiplier) {
  if (!(multiplier >= 1.0)) throw std::invalid_argument("cutoff multiplier must be >= 1");
  std::sort(tasks.begin(), tasks.end());
  ProblemInstance inst;
  for (const auto& t : tasks) {
    auto p = shortest_path(graph, t.src, t.dst);
    if (!p) throw InfeasibleError("infeasible task " + to_string(t));
    inst.cutoffs[t] = multiplier * path_cost(graph, *p);
    weights.at(t);
  }
  inst.graph = std::move(graph);
  inst.tasks = std::move(tasks);
  inst.weights = std::move(weights);
  return inst;
}

}  // namespace navmin

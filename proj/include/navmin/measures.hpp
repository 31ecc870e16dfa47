#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <set>
#include <string_view>
#include <utility>

#include "navmin/graph.hpp"
#include "navmin/problem.hpp"

namespace navmin {

enum class CostFunction { GSC, BVC };

inline std::string_view to_string(CostFunction f) { return f == CostFunction::GSC ? "gsc" : "bvc"; }

inline CostFunction parse_cost_function(std::string_view s) {
  if (s == "gsc" || s == "GSC") return CostFunction::GSC;
  if (s == "bvc" || s == "BVC") return CostFunction::BVC;
  throw std::invalid_argument("unknown cost function '" + std::string(s) + "'");
}

/// The weighted sums every measure is built from.
struct MeasureTotals {
  double branching = 0.0;  // sum_t sum_{v in path} W(t) [deg(v) > 1]
  double degree = 0.0;     // sum_t sum_{v in path} W(t) deg(v)
  double visits = 0.0;     // sum_t sum_{v in path} W(t)
  double gsc = 0.0;
  std::size_t branching_vertices = 0;  // distinct path vertices with deg > 1

  double wpc() const { return branching * degree; }
  double nv_nbv() const {
    return branching == 0.0 ? std::numeric_limits<double>::infinity() : visits / branching;
  }
  double bvc() const { return wpc() * gsc; }
};

/// Out-degree of every vertex in the union of the solution's paths.
inline std::map<VertexId, std::size_t> union_out_degrees(const Solution& solution) {
  std::map<VertexId, std::set<VertexId>> succ;
  for (const auto& [task, p] : solution.paths)
    for (std::size_t i = 0; i < p.size(); ++i) {
      auto& s = succ[p[i]];
      if (i + 1 < p.size()) s.insert(p[i + 1]);
    }
  std::map<VertexId, std::size_t> deg;
  for (const auto& [v, s] : succ) deg[v] = s.size();
  return deg;
}

/// Evaluates all measure sums with out-degrees supplied by `degree_of`.
template <typename DegreeOf>
MeasureTotals evaluate_with(const Solution& solution, const TaskWeights& weights,
                            DegreeOf&& degree_of) {
  MeasureTotals totals;
  std::map<VertexId, double> vertex_max;
  std::map<std::pair<VertexId, VertexId>, double> edge_max;
  std::set<VertexId> branching;
  for (const auto& [task, p] : solution.paths) {
    if (p.size() < 2 || p.front() != task.src || p.back() != task.dst)
      throw std::invalid_argument("path endpoints do not match task " + to_string(task));
    const double w = weights.at(task);
    for (std::size_t i = 0; i < p.size(); ++i) {
      const std::size_t deg = degree_of(p[i]);
      totals.visits += w;
      totals.degree += w * static_cast<double>(deg);
      if (deg > 1) {
        totals.branching += w;
        branching.insert(p[i]);
      }
      auto [vit, vnew] = vertex_max.try_emplace(p[i], w);
      if (!vnew && w > vit->second) vit->second = w;
      if (i + 1 < p.size()) {
        auto [eit, enew] = edge_max.try_emplace({p[i], p[i + 1]}, w);
        if (!enew && w > eit->second) eit->second = w;
      }
    }
  }
  for (const auto& [e, w] : edge_max) totals.gsc += w;
  for (const auto& [v, w] : vertex_max) totals.gsc += w;
  totals.branching_vertices = branching.size();
  return totals;
}

/// Measures with out-degrees taken in the union of the solution's paths.
inline MeasureTotals evaluate(const Solution& solution, const TaskWeights& weights) {
  const auto deg = union_out_degrees(solution);
  return evaluate_with(solution, weights, [&](VertexId v) { return deg.at(v); });
}

/// Measures with out-degrees taken in `nav`, which must contain every path.
inline MeasureTotals evaluate_in(const DirectedGraph& nav, const Solution& solution,
                                 const TaskWeights& weights) {
  return evaluate_with(solution, weights, [&](VertexId v) { return nav.out_degree(v); });
}

inline double wpc(const Solution& s, const TaskWeights& w) { return evaluate(s, w).wpc(); }
inline double nv_nbv(const Solution& s, const TaskWeights& w) { return evaluate(s, w).nv_nbv(); }
inline double gsc(const Solution& s, const TaskWeights& w) { return evaluate(s, w).gsc; }
inline double bvc(const Solution& s, const TaskWeights& w) { return evaluate(s, w).bvc(); }

inline double cost(CostFunction f, const MeasureTotals& totals) {
  return f == CostFunction::GSC ? totals.gsc : totals.bvc();
}

inline double cost(CostFunction f, const Solution& s, const TaskWeights& w) {
  return cost(f, evaluate(s, w));
}

/// Among the minimum-cost paths for `task`, one whose vertices have the least
/// weighted out-degree sum in `graph`.
inline Path min_wpc_shortest_path(const DirectedGraph& graph, const Task& task,
                                  const TaskWeights& weights) {
  const double w = weights.at(task);
  auto p = lexicographic_shortest_path(graph, task.src, task.dst, [&](int v) {
    return w * static_cast<double>(graph.out_arcs(v).size());
  });
  if (!p) throw InfeasibleError("no path for task " + to_string(task));
  return *p;
}

struct PredictabilityReport {
  double wpc = 0.0;
  double nv_nbv = 0.0;  // +inf when no task path meets a branching vertex
  double gsc = 0.0;
  double bvc = 0.0;
  std::size_t branching_vertex_count = 0;
  double avg_suboptimality = 1.0;
  std::size_t num_vertices = 0;
  std::size_t num_edges = 0;
};

/// Reporting paths: per task, the WPC-minimal shortest path inside `nav`.
inline Solution reporting_paths(const DirectedGraph& nav, const ProblemInstance& instance) {
  Solution out;
  for (const auto& t : instance.tasks) out.paths[t] = min_wpc_shortest_path(nav, t, instance.weights);
  return out;
}

/// Final measures of the navigation graph induced by `solution`.
inline PredictabilityReport report(const Solution& solution, const ProblemInstance& instance) {
  const auto paths = solution.path_list();
  const DirectedGraph nav = union_subgraph(instance.graph, paths);
  const Solution shortest = reporting_paths(nav, instance);
  const MeasureTotals totals = evaluate_in(nav, shortest, instance.weights);

  PredictabilityReport r;
  r.wpc = totals.wpc();
  r.nv_nbv = totals.nv_nbv();
  r.gsc = totals.gsc;
  r.bvc = r.wpc * r.gsc;
  r.branching_vertex_count = totals.branching_vertices;
  r.num_vertices = nav.vertex_count();
  r.num_edges = nav.edge_count();

  double ratio_sum = 0.0;
  for (const auto& t : instance.tasks) {
    auto best = shortest_path(instance.graph, t.src, t.dst);
    if (!best) throw InfeasibleError("task unreachable in host graph: " + to_string(t));
    ratio_sum += path_cost(nav, shortest.paths.at(t)) / path_cost(instance.graph, *best);
  }
  r.avg_suboptimality =
      instance.tasks.empty() ? 1.0 : ratio_sum / static_cast<double>(instance.tasks.size());
  return r;
}

}  // namespace navmin

#pragma once

#include <cmath>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "navmin/graph.hpp"
#include "navmin/problem.hpp"
#include "navmin/rng.hpp"

namespace navmin {

struct InstanceParams {
  std::uint64_t seed = 0;
  int grid_width = 20;
  int grid_height = 20;
  double drop_vertex_frac = 0.2;
  double drop_edge_frac = 0.2;
  int num_terminals = 6;
  double cutoff_multiplier = 3.0;
};

inline constexpr int kTerminalAttempts = 100;

/// Grid with dropped vertices and directed edges, before terminal selection.
struct DroppedGrid {
  DirectedGraph graph;
  std::size_t vertices_after_drop = 0;  // before isolated-vertex cleanup
  std::vector<VertexId> removed_vertices;
  std::vector<std::pair<VertexId, VertexId>> removed_edges;
};

inline DroppedGrid drop_grid_elements(Rng& rng, int width, int height, double vertex_frac,
                                      double edge_frac) {
  DroppedGrid out;
  out.graph = make_grid_graph(width, height);
  auto& g = out.graph;

  const auto n_drop = static_cast<std::size_t>(
      std::floor(vertex_frac * static_cast<double>(g.vertex_count())));
  out.removed_vertices = rng.sample(g.vertices(), n_drop);
  for (auto v : out.removed_vertices) g.remove_vertex(v);
  out.vertices_after_drop = g.vertex_count();

  std::vector<std::pair<VertexId, VertexId>> arcs;
  for (const auto& e : g.edges()) arcs.emplace_back(e.from, e.to);
  const auto e_drop =
      static_cast<std::size_t>(std::floor(edge_frac * static_cast<double>(arcs.size())));
  out.removed_edges = rng.sample(std::move(arcs), e_drop);
  for (const auto& [u, v] : out.removed_edges) g.remove_edge(u, v);

  std::vector<VertexId> isolated;
  for (auto v : g.vertices())
    if (g.out_degree(v) == 0 && g.in_degree(v) == 0) isolated.push_back(v);
  for (auto v : isolated) g.remove_vertex(v);
  out.removed_vertices.insert(out.removed_vertices.end(), isolated.begin(), isolated.end());
  std::sort(out.removed_vertices.begin(), out.removed_vertices.end());
  std::sort(out.removed_edges.begin(), out.removed_edges.end());
  return out;
}

/// Seeded random grid instance: drops, terminal selection, cutoffs, weights.
///
/// Terminals are redrawn (up to kTerminalAttempts times) until every ordered
/// pair is reachable. Throws InfeasibleError when no draw succeeds.
inline ProblemInstance random_instance(const InstanceParams& params) {
  if (params.grid_width < 2 || params.grid_height < 2)
    throw std::invalid_argument("grid must be at least 2x2");
  if (params.num_terminals < 2) throw std::invalid_argument("need at least 2 terminals");
  auto in_unit = [](double f) { return f >= 0.0 && f < 1.0; };
  if (!in_unit(params.drop_vertex_frac) || !in_unit(params.drop_edge_frac))
    throw std::invalid_argument("drop fractions must be in [0, 1)");
  if (!(params.cutoff_multiplier >= 1.0))
    throw std::invalid_argument("cutoff multiplier must be >= 1");

  Rng rng(params.seed);
  DroppedGrid grid = drop_grid_elements(rng, params.grid_width, params.grid_height,
                                        params.drop_vertex_frac, params.drop_edge_frac);
  const auto& g = grid.graph;
  if (g.vertex_count() < static_cast<std::size_t>(params.num_terminals))
    throw InfeasibleError("fewer vertices than terminals after drops");

  for (int attempt = 0; attempt < kTerminalAttempts; ++attempt) {
    auto terminals = rng.sample(g.vertices(), static_cast<std::size_t>(params.num_terminals));
    auto tasks = all_ordered_pairs(terminals);
    bool feasible = true;
    for (const auto& t : tasks)
      if (!reachable(g, t.src, t.dst)) {
        feasible = false;
        break;
      }
    if (!feasible) continue;

    std::map<Task, double> raw;
    double sum = 0.0;
    for (const auto& t : tasks) sum += (raw[t] = rng.uniform01());
    if (!(sum > 0.0)) continue;
    for (auto& [t, w] : raw) w /= sum;

    ProblemInstance inst =
        make_instance(grid.graph, std::move(tasks), TaskWeights(std::move(raw)),
                      params.cutoff_multiplier);
    Provenance prov;
    prov.seed = params.seed;
    prov.grid_width = params.grid_width;
    prov.grid_height = params.grid_height;
    prov.drop_vertex_frac = params.drop_vertex_frac;
    prov.drop_edge_frac = params.drop_edge_frac;
    prov.num_terminals = params.num_terminals;
    prov.cutoff_multiplier = params.cutoff_multiplier;
    prov.removed_vertices = grid.removed_vertices;
    prov.removed_edges = grid.removed_edges;
    inst.provenance = std::move(prov);
    return inst;
  }
  throw InfeasibleError("no mutually reachable terminal set after " +
                        std::to_string(kTerminalAttempts) + " draws (seed " +
                        std::to_string(params.seed) + ", " + std::to_string(g.vertex_count()) +
                        " vertices)");
}

}  // namespace navmin

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "navmin/conflict.hpp"
#include "navmin/graph.hpp"
#include "navmin/hillclimb.hpp"
#include "navmin/measures.hpp"
#include "navmin/problem.hpp"
#include "navmin/rng.hpp"

namespace navmin {

using json = nlohmann::json;

/// Malformed or unreadable input file.
class FormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline json to_json(VertexId v) { return json::array({v.row, v.col}); }

inline VertexId vertex_from_json(const json& j) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number_integer() || !j[1].is_number_integer())
    throw FormatError("vertex must be [row, col], got " + j.dump());
  return {j[0].get<int>(), j[1].get<int>()};
}

inline json path_to_json(const Path& p) {
  json out = json::array();
  for (auto v : p) out.push_back(to_json(v));
  return out;
}

inline Path path_from_json(const json& j) {
  if (!j.is_array()) throw FormatError("path must be an array of vertices");
  Path p;
  for (const auto& v : j) p.push_back(vertex_from_json(v));
  return p;
}

/// Explicit form: {"vertices": [[r,c],...], "edges": [[[r,c],[r,c],w],...]}.
inline json graph_to_json(const DirectedGraph& g) {
  json vertices = json::array();
  for (auto v : g.vertices()) vertices.push_back(to_json(v));
  json edges = json::array();
  for (const auto& e : g.edges()) edges.push_back(json::array({to_json(e.from), to_json(e.to), e.weight}));
  return json{{"vertices", vertices}, {"edges", edges}};
}

/// Grid form: full grid minus removed vertices and removed directed edges.
inline json grid_graph_to_json(int width, int height, const std::vector<VertexId>& removed_vertices,
                               const std::vector<std::pair<VertexId, VertexId>>& removed_edges) {
  json rv = json::array();
  for (auto v : removed_vertices) rv.push_back(to_json(v));
  json re = json::array();
  for (const auto& [u, v] : removed_edges) re.push_back(json::array({to_json(u), to_json(v)}));
  return json{{"grid", {{"width", width}, {"height", height}}},
              {"removed_vertices", rv},
              {"removed_edges", re}};
}

/// Accepts either graph form. Extra keys are ignored.
inline DirectedGraph graph_from_json(const json& j) {
  try {
    if (j.contains("grid")) {
      const auto& grid = j.at("grid");
      DirectedGraph g = make_grid_graph(grid.at("width").get<int>(), grid.at("height").get<int>());
      if (j.contains("removed_edges"))
        for (const auto& e : j.at("removed_edges")) {
          if (!e.is_array() || e.size() != 2) throw FormatError("removed edge must be [u, v]");
          g.remove_edge(vertex_from_json(e[0]), vertex_from_json(e[1]));
        }
      if (j.contains("removed_vertices"))
        for (const auto& v : j.at("removed_vertices")) g.remove_vertex(vertex_from_json(v));
      return g;
    }
    std::vector<VertexId> vertices;
    for (const auto& v : j.at("vertices")) vertices.push_back(vertex_from_json(v));
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 3) throw FormatError("edge must be [u, v, weight]");
      edges.push_back({vertex_from_json(e[0]), vertex_from_json(e[1]), e[2].get<double>()});
    }
    return DirectedGraph(std::move(vertices), edges);
  } catch (const FormatError&) {
    throw;
  } catch (const std::exception& ex) {
    throw FormatError(std::string("invalid graph: ") + ex.what());
  }
}

inline json instance_to_json(const ProblemInstance& inst) {
  json out;
  if (inst.provenance) {
    const auto& p = *inst.provenance;
    out = grid_graph_to_json(p.grid_width, p.grid_height, p.removed_vertices, p.removed_edges);
    out["provenance"] = {{"rng", kRngName},
                         {"seed", p.seed},
                         {"grid_width", p.grid_width},
                         {"grid_height", p.grid_height},
                         {"drop_vertex_frac", p.drop_vertex_frac},
                         {"drop_edge_frac", p.drop_edge_frac},
                         {"num_terminals", p.num_terminals},
                         {"cutoff_multiplier", p.cutoff_multiplier}};
  } else {
    out = graph_to_json(inst.graph);
  }
  json tasks = json::array();
  for (const auto& t : inst.tasks)
    tasks.push_back({{"src", to_json(t.src)},
                     {"dst", to_json(t.dst)},
                     {"weight", inst.weights.at(t)},
                     {"cutoff", inst.cutoffs.at(t)}});
  out["tasks"] = tasks;
  return out;
}

inline ProblemInstance instance_from_json(const json& j) {
  ProblemInstance inst;
  inst.graph = graph_from_json(j);
  try {
    std::map<Task, double> weights;
    for (const auto& t : j.at("tasks")) {
      Task task(vertex_from_json(t.at("src")), vertex_from_json(t.at("dst")));
      if (!inst.graph.contains(task.src) || !inst.graph.contains(task.dst))
        throw FormatError("task endpoint not in graph: " + to_string(task));
      if (weights.contains(task)) throw FormatError("duplicate task " + to_string(task));
      weights[task] = t.at("weight").get<double>();
      const double cutoff = t.at("cutoff").get<double>();
      if (!(cutoff > 0.0)) throw FormatError("cutoff must be positive for " + to_string(task));
      inst.cutoffs[task] = cutoff;
      inst.tasks.push_back(task);
    }
    std::sort(inst.tasks.begin(), inst.tasks.end());
    inst.weights = TaskWeights(std::move(weights));
    if (j.contains("provenance") && j.contains("grid")) {
      const auto& p = j.at("provenance");
      Provenance prov;
      prov.seed = p.at("seed").get<std::uint64_t>();
      prov.grid_width = p.at("grid_width").get<int>();
      prov.grid_height = p.at("grid_height").get<int>();
      prov.drop_vertex_frac = p.at("drop_vertex_frac").get<double>();
      prov.drop_edge_frac = p.at("drop_edge_frac").get<double>();
      prov.num_terminals = p.at("num_terminals").get<int>();
      prov.cutoff_multiplier = p.at("cutoff_multiplier").get<double>();
      for (const auto& v : j.at("removed_vertices")) prov.removed_vertices.push_back(vertex_from_json(v));
      for (const auto& e : j.at("removed_edges"))
        prov.removed_edges.emplace_back(vertex_from_json(e[0]), vertex_from_json(e[1]));
      inst.provenance = std::move(prov);
    }
  } catch (const FormatError&) {
    throw;
  } catch (const std::exception& ex) {
    throw FormatError(std::string("invalid instance: ") + ex.what());
  }
  return inst;
}

inline std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::string instance_hash(const ProblemInstance& inst) {
  std::ostringstream s;
  s << std::hex;
  s.width(16);
  s.fill('0');
  s << fnv1a64(instance_to_json(inst).dump());
  return s.str();
}

inline json report_to_json(const PredictabilityReport& r) {
  json nv = std::isinf(r.nv_nbv) ? json("inf") : json(r.nv_nbv);
  return {{"wpc", r.wpc},
          {"nv_nbv", nv},
          {"gsc", r.gsc},
          {"bvc", r.bvc},
          {"branching_vertex_count", r.branching_vertex_count},
          {"avg_suboptimality", r.avg_suboptimality},
          {"num_vertices", r.num_vertices},
          {"num_edges", r.num_edges}};
}

inline json trace_to_json(const SearchTrace& trace) {
  json restarts = json::array();
  for (std::size_t r = 0; r < trace.restarts.size(); ++r) {
    json steps = json::array();
    for (const auto& [it, c] : trace.restarts[r].steps) steps.push_back(json::array({it, c}));
    restarts.push_back({{"restart", r}, {"steps", steps}, {"best_cost", trace.restarts[r].best_cost}});
  }
  return json{{"restarts", restarts}};
}

inline json solution_to_json(const Solution& s) {
  json out = json::array();
  for (const auto& [t, p] : s.paths)
    out.push_back({{"src", to_json(t.src)}, {"dst", to_json(t.dst)}, {"path", path_to_json(p)}});
  return out;
}

/// Graphviz rendering; terminals blue, branching vertices red, laid out on
/// grid coordinates.
inline std::string to_dot(const DirectedGraph& g, const std::vector<VertexId>& terminals) {
  const std::set<VertexId> term(terminals.begin(), terminals.end());
  auto name = [](VertexId v) { return "\"" + std::to_string(v.row) + "_" + std::to_string(v.col) + "\""; };
  std::ostringstream dot;
  dot << "digraph navigation {\n  node [shape=circle, style=filled, fillcolor=white, label=\"\"];\n";
  for (auto v : g.vertices()) {
    dot << "  " << name(v) << " [pos=\"" << v.col << "," << -v.row << "!\"";
    const bool branching = g.out_degree(v) > 1;
    if (term.contains(v))
      dot << ", fillcolor=blue";
    else if (branching)
      dot << ", fillcolor=red";
    if (branching) dot << ", color=red, penwidth=3";
    dot << "];\n";
  }
  for (const auto& e : g.edges()) dot << "  " << name(e.from) << " -> " << name(e.to) << ";\n";
  dot << "}\n";
  return dot.str();
}

/// {"graph": {...}, "robots": [[v...], ...], "human": [v...]}.
inline CollisionFixture fixture_from_json(const json& j) {
  CollisionFixture f;
  try {
    f.graph = graph_from_json(j.at("graph"));
    for (const auto& r : j.at("robots")) f.robots.push_back(path_from_json(r));
    f.human = path_from_json(j.at("human"));
  } catch (const FormatError&) {
    throw;
  } catch (const std::exception& ex) {
    throw FormatError(std::string("invalid fixture: ") + ex.what());
  }
  if (f.human.empty()) throw FormatError("fixture human path is empty");
  for (const auto& r : f.robots)
    if (r.empty()) throw FormatError("fixture robot path is empty");
  return f;
}

inline json fixture_to_json(const CollisionFixture& f) {
  json robots = json::array();
  for (const auto& r : f.robots) robots.push_back(path_to_json(r));
  return {{"graph", graph_to_json(f.graph)}, {"robots", robots}, {"human", path_to_json(f.human)}};
}

inline json read_json_file(const std::string& file) {
  std::ifstream in(file);
  if (!in) throw FormatError("cannot open " + file);
  try {
    return json::parse(in);
  } catch (const json::exception& ex) {
    throw FormatError(file + ": " + ex.what());
  }
}

inline void write_text_file(const std::string& file, const std::string& text) {
  std::ofstream out(file, std::ios::binary);
  if (!out) throw std::ios_base::failure("cannot write " + file);
  out << text;
  if (!out) throw std::ios_base::failure("write failed: " + file);
}

}  // namespace navmin

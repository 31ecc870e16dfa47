#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <queue>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace navmin {

/// Grid cell coordinate. Non-grid graphs reuse the same pair as an opaque id.
struct VertexId {
  int row = 0;
  int col = 0;

  friend constexpr auto operator<=>(const VertexId&, const VertexId&) = default;
};

inline std::string to_string(VertexId v) {
  return "(" + std::to_string(v.row) + "," + std::to_string(v.col) + ")";
}

struct Edge {
  VertexId from;
  VertexId to;
  double weight = 1.0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

/// A simple directed path, stored as its vertex sequence.
using Path = std::vector<VertexId>;

/// Weighted directed graph with deterministic (sorted) vertex and arc order.
///
/// Vertices are kept in a sorted vector so every traversal is reproducible;
/// dense indices into that vector are exposed for the hot search loops and
/// are invalidated by adding or removing vertices.
class DirectedGraph {
 public:
  struct Arc {
    int to;
    double weight;
    friend bool operator==(const Arc&, const Arc&) = default;
  };

  DirectedGraph() = default;

  DirectedGraph(std::vector<VertexId> vertices, std::span<const Edge> edges) {
    std::sort(vertices.begin(), vertices.end());
    if (std::adjacent_find(vertices.begin(), vertices.end()) != vertices.end())
      throw std::invalid_argument("duplicate vertex id");
    ids_ = std::move(vertices);
    out_.assign(ids_.size(), {});
    in_.assign(ids_.size(), {});
    for (const auto& e : edges) add_edge(e.from, e.to, e.weight);
  }

  std::size_t vertex_count() const { return ids_.size(); }
  std::size_t edge_count() const {
    std::size_t n = 0;
    for (const auto& arcs : out_) n += arcs.size();
    return n;
  }
  bool empty() const { return ids_.empty(); }

  const std::vector<VertexId>& vertices() const { return ids_; }

  bool contains(VertexId v) const { return find_index(v).has_value(); }

  bool has_edge(VertexId u, VertexId v) const {
    auto iu = find_index(u);
    auto iv = find_index(v);
    return iu && iv && find_arc(out_[*iu], *iv) != out_[*iu].end();
  }

  std::optional<int> find_index(VertexId v) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
    if (it == ids_.end() || *it != v) return std::nullopt;
    return static_cast<int>(it - ids_.begin());
  }

  int index_of(VertexId v) const {
    auto i = find_index(v);
    if (!i) throw std::invalid_argument("unknown vertex " + to_string(v));
    return *i;
  }

  VertexId id_at(int index) const { return ids_[static_cast<std::size_t>(index)]; }

  std::span<const Arc> out_arcs(int index) const { return out_[static_cast<std::size_t>(index)]; }
  std::span<const Arc> in_arcs(int index) const { return in_[static_cast<std::size_t>(index)]; }

  /// Weight of edge u->v; throws if absent.
  double weight(VertexId u, VertexId v) const {
    int iu = index_of(u);
    int iv = index_of(v);
    auto it = find_arc(out_[iu], iv);
    if (it == out_[iu].end())
      throw std::invalid_argument("missing edge " + to_string(u) + "->" + to_string(v));
    return it->weight;
  }

  std::size_t out_degree(VertexId v) const { return out_[index_of(v)].size(); }
  std::size_t in_degree(VertexId v) const { return in_[index_of(v)].size(); }

  std::vector<VertexId> successors(VertexId v) const {
    std::vector<VertexId> result;
    for (const auto& a : out_[index_of(v)]) result.push_back(ids_[a.to]);
    return result;
  }

  std::vector<Edge> edges() const {
    std::vector<Edge> result;
    for (std::size_t i = 0; i < ids_.size(); ++i)
      for (const auto& a : out_[i]) result.push_back({ids_[i], ids_[a.to], a.weight});
    return result;
  }

  /// Inserts v if absent. Returns true when the vertex was new.
  bool add_vertex(VertexId v) {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), v);
    if (it != ids_.end() && *it == v) return false;
    int pos = static_cast<int>(it - ids_.begin());
    ids_.insert(it, v);
    out_.insert(out_.begin() + pos, std::vector<Arc>{});
    in_.insert(in_.begin() + pos, std::vector<Arc>{});
    shift_indices(pos, +1);
    return true;
  }

  /// Removes v together with its incident edges.
  void remove_vertex(VertexId v) {
    int iv = index_of(v);
    for (const auto& a : out_[iv]) erase_arc(in_[a.to], iv);
    for (const auto& a : in_[iv]) erase_arc(out_[a.to], iv);
    ids_.erase(ids_.begin() + iv);
    out_.erase(out_.begin() + iv);
    in_.erase(in_.begin() + iv);
    shift_indices(iv, -1);
  }

  void add_edge(VertexId u, VertexId v, double w) {
    if (u == v) throw std::invalid_argument("self-loop at " + to_string(u));
    if (!(w > 0.0) || !std::isfinite(w))
      throw std::invalid_argument("edge weight must be positive and finite");
    int iu = index_of(u);
    int iv = index_of(v);
    upsert_arc(out_[iu], iv, w);
    upsert_arc(in_[iv], iu, w);
  }

  void remove_edge(VertexId u, VertexId v) {
    int iu = index_of(u);
    int iv = index_of(v);
    if (!erase_arc(out_[iu], iv))
      throw std::invalid_argument("missing edge " + to_string(u) + "->" + to_string(v));
    erase_arc(in_[iv], iu);
  }

  void set_weight(VertexId u, VertexId v, double w) {
    if (!has_edge(u, v))
      throw std::invalid_argument("missing edge " + to_string(u) + "->" + to_string(v));
    add_edge(u, v, w);
  }

  friend bool operator==(const DirectedGraph&, const DirectedGraph&) = default;

 private:
  using Arcs = std::vector<Arc>;

  static Arcs::const_iterator find_arc(const Arcs& arcs, int to) {
    auto it = std::lower_bound(arcs.begin(), arcs.end(), to,
                               [](const Arc& a, int t) { return a.to < t; });
    return (it != arcs.end() && it->to == to) ? it : arcs.end();
  }

  static void upsert_arc(Arcs& arcs, int to, double w) {
    auto it = std::lower_bound(arcs.begin(), arcs.end(), to,
                               [](const Arc& a, int t) { return a.to < t; });
    if (it != arcs.end() && it->to == to)
      it->weight = w;
    else
      arcs.insert(it, Arc{to, w});
  }

  static bool erase_arc(Arcs& arcs, int to) {
    auto it = find_arc(arcs, to);
    if (it == arcs.end()) return false;
    arcs.erase(it);
    return true;
  }

  // Renumbers arc targets after an insertion (+1) or removal (-1) at pos.
  void shift_indices(int pos, int delta) {
    auto fix = [&](Arcs& arcs) {
      for (auto& a : arcs)
        if (a.to >= pos) a.to += delta;
    };
    for (auto& arcs : out_) fix(arcs);
    for (auto& arcs : in_) fix(arcs);
  }

  std::vector<VertexId> ids_;
  std::vector<Arcs> out_;
  std::vector<Arcs> in_;
};

/// Full 4-connected grid, both directions, unit weights. Rows are height.
inline DirectedGraph make_grid_graph(int width, int height) {
  if (width < 1 || height < 1) throw std::invalid_argument("grid dimensions must be >= 1");
  std::vector<VertexId> vertices;
  vertices.reserve(static_cast<std::size_t>(width) * static_cast<std::size_t>(height));
  for (int r = 0; r < height; ++r)
    for (int c = 0; c < width; ++c) vertices.push_back({r, c});
  std::vector<Edge> edges;
  for (int r = 0; r < height; ++r) {
    for (int c = 0; c < width; ++c) {
      if (c + 1 < width) {
        edges.push_back({{r, c}, {r, c + 1}, 1.0});
        edges.push_back({{r, c + 1}, {r, c}, 1.0});
      }
      if (r + 1 < height) {
        edges.push_back({{r, c}, {r + 1, c}, 1.0});
        edges.push_back({{r + 1, c}, {r, c}, 1.0});
      }
    }
  }
  return DirectedGraph(std::move(vertices), edges);
}

inline std::size_t out_degree(const DirectedGraph& graph, VertexId v) {
  return graph.out_degree(v);
}

inline double path_cost(const DirectedGraph& graph, const Path& path) {
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < path.size(); ++i) total += graph.weight(path[i], path[i + 1]);
  return total;
}

/// True when every consecutive pair is an edge and no vertex repeats.
inline bool is_valid_path(const DirectedGraph& graph, const Path& path) {
  if (path.size() < 2) return false;
  for (std::size_t i = 0; i + 1 < path.size(); ++i)
    if (!graph.has_edge(path[i], path[i + 1])) return false;
  Path sorted = path;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();
}

namespace detail {

inline bool nearly_equal(double a, double b) {
  if (std::isinf(a) || std::isinf(b)) return a == b;
  return std::fabs(a - b) <= 1e-9 * std::max({1.0, std::fabs(a), std::fabs(b)});
}

/// Additive path label (distance, secondary) compared lexicographically.
struct LexCost {
  double distance = 0.0;
  double secondary = 0.0;
};

}  // namespace detail

/// Minimum-cost path under a lexicographic label (distance, vertex_term sum),
/// returning the lexicographically smallest vertex sequence among all optimal
/// ones.
///
/// Runs a reverse Dijkstra from dst labelling every vertex with the best
/// label to dst, then walks forward from src always taking the smallest
/// successor that stays on an optimal path. `vertex_term(i)` is the secondary
/// contribution of dense vertex i (include it for every path vertex).
template <typename VertexTerm>
std::optional<Path> lexicographic_shortest_path(const DirectedGraph& graph, VertexId src,
                                                VertexId dst, VertexTerm&& vertex_term) {
  using detail::LexCost;
  const int s = graph.index_of(src);
  const int t = graph.index_of(dst);
  if (s == t) throw std::invalid_argument("path endpoints must differ");

  const std::size_t n = graph.vertex_count();
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<LexCost> label(n, LexCost{kInf, kInf});

  auto less = [](const LexCost& a, const LexCost& b) {
    if (!detail::nearly_equal(a.distance, b.distance)) return a.distance < b.distance;
    return a.secondary < b.secondary && !detail::nearly_equal(a.secondary, b.secondary);
  };
  auto same = [](const LexCost& a, const LexCost& b) {
    return detail::nearly_equal(a.distance, b.distance) &&
           detail::nearly_equal(a.secondary, b.secondary);
  };

  using Entry = std::pair<LexCost, int>;
  auto heap_cmp = [&](const Entry& a, const Entry& b) { return less(b.first, a.first); };
  std::priority_queue<Entry, std::vector<Entry>, decltype(heap_cmp)> heap(heap_cmp);
  std::vector<char> done(n, 0);

  label[t] = LexCost{0.0, static_cast<double>(vertex_term(t))};
  heap.push({label[t], t});
  while (!heap.empty()) {
    auto [cost, v] = heap.top();
    heap.pop();
    if (done[v]) continue;
    done[v] = 1;
    if (v == s) break;
    for (const auto& arc : graph.in_arcs(v)) {
      const int u = arc.to;
      if (done[u]) continue;
      LexCost candidate{cost.distance + arc.weight,
                        cost.secondary + static_cast<double>(vertex_term(u))};
      if (less(candidate, label[u])) {
        label[u] = candidate;
        heap.push({candidate, u});
      }
    }
  }
  if (!done[s]) return std::nullopt;

  // Forward walk. Vertices on the optimal frontier are settled or have final
  // labels because their label is <= label[s].
  Path path{src};
  int v = s;
  while (v != t) {
    int next = -1;
    for (const auto& arc : graph.out_arcs(v)) {
      const int u = arc.to;
      if (!done[u]) continue;
      LexCost via{label[u].distance + arc.weight,
                  label[u].secondary + static_cast<double>(vertex_term(v))};
      if (same(via, label[v])) {
        next = u;  // arcs are sorted by target index, which follows VertexId order
        break;
      }
    }
    if (next < 0) throw std::logic_error("shortest path reconstruction failed");
    path.push_back(graph.id_at(next));
    v = next;
  }
  return path;
}

/// Minimum-weight directed path, lexicographically smallest among ties.
inline std::optional<Path> shortest_path(const DirectedGraph& graph, VertexId src, VertexId dst) {
  return lexicographic_shortest_path(graph, src, dst, [](int) { return 0; });
}

/// Edge-induced subgraph of the union of paths, weights copied from graph.
inline DirectedGraph union_subgraph(const DirectedGraph& graph, std::span<const Path> paths) {
  std::vector<VertexId> vertices;
  std::vector<Edge> edges;
  for (const auto& p : paths) {
    if (!is_valid_path(graph, p)) throw std::invalid_argument("path not valid in graph");
    vertices.insert(vertices.end(), p.begin(), p.end());
    for (std::size_t i = 0; i + 1 < p.size(); ++i)
      edges.push_back({p[i], p[i + 1], graph.weight(p[i], p[i + 1])});
  }
  std::sort(vertices.begin(), vertices.end());
  vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());
  return DirectedGraph(std::move(vertices), edges);
}

/// Whether dst is reachable from src along directed edges.
inline bool reachable(const DirectedGraph& graph, VertexId src, VertexId dst) {
  const int s = graph.index_of(src);
  const int t = graph.index_of(dst);
  std::vector<char> seen(graph.vertex_count(), 0);
  std::vector<int> stack{s};
  seen[s] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (v == t) return true;
    for (const auto& a : graph.out_arcs(v))
      if (!seen[a.to]) {
        seen[a.to] = 1;
        stack.push_back(a.to);
      }
  }
  return false;
}

}  // namespace navmin

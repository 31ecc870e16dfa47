#include <gtest/gtest.h>

#include <algorithm>

#include "navmin/conflict.hpp"
#include "navmin/hillclimb.hpp"
#include "navmin/instance_gen.hpp"
#include "navmin/io.hpp"
#include "oracles.hpp"

namespace navmin {
namespace {

CollisionFixture load(const std::string& name) {
  return fixture_from_json(read_json_file(std::string(NAVMIN_FIXTURE_DIR) + "/" + name));
}

TEST(ReachablePositions, HorizonZeroIsStart) {
  auto g = make_grid_graph(3, 3);
  auto rs = reachable_positions(g, {1, 1}, 0);
  ASSERT_EQ(rs.size(), 1u);
  EXPECT_EQ(rs[0], (std::set<VertexId>{{1, 1}}));
}

TEST(ReachablePositions, ChainStaysSingleton) {
  auto g = union_subgraph(make_grid_graph(4, 1), std::vector<Path>{{{0, 0}, {0, 1}, {0, 2}, {0, 3}}});
  auto rs = reachable_positions(g, {0, 0}, 6);
  for (const auto& s : rs) EXPECT_EQ(s.size(), 1u);
  EXPECT_EQ(rs.back(), (std::set<VertexId>{{0, 3}}));
}

TEST(ReachablePositions, OneStepBeforeBranch) {
  // (0,0) -> (0,1) which forks into two disjoint arms of length 2.
  std::vector<VertexId> vs{{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 1}, {2, 1}};
  std::vector<Edge> es{{{0, 0}, {0, 1}, 1.0},
                       {{0, 1}, {0, 2}, 1.0},
                       {{0, 2}, {0, 3}, 1.0},
                       {{0, 1}, {1, 1}, 1.0},
                       {{1, 1}, {2, 1}, 1.0}};
  DirectedGraph g(vs, es);
  auto rs = reachable_positions(g, {0, 0}, 3);
  std::vector<std::size_t> sizes;
  for (const auto& s : rs) sizes.push_back(s.size());
  EXPECT_EQ(sizes, (std::vector<std::size_t>{1, 1, 2, 2}));
}

TEST(ReachablePositions, UnknownStartRejected) {
  auto g = make_grid_graph(2, 2);
  EXPECT_THROW(reachable_positions(g, {5, 5}, 2), std::invalid_argument);
  EXPECT_THROW(reachable_positions(g, {0, 0}, -1), std::invalid_argument);
}

TEST(ReachablePositionsProperty, MonotoneUnderEdgeAddition) {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Rng rng(seed);
    auto full = make_grid_graph(4, 4);
    DirectedGraph sparse = full;
    for (const auto& e : full.edges())
      if (rng.uniform_below(2) == 0) sparse.remove_edge(e.from, e.to);
    DirectedGraph grown = sparse;
    for (const auto& e : full.edges())
      if (!grown.has_edge(e.from, e.to) && rng.uniform_below(3) == 0) grown.add_edge(e.from, e.to, 1.0);
    for (auto start : full.vertices()) {
      auto small = reachable_positions(sparse, start, 5);
      auto big = reachable_positions(grown, start, 5);
      for (std::size_t k = 0; k < small.size(); ++k)
        for (auto v : small[k]) {
          if (sparse.out_degree(v) > 0) {
            // reached by exactly k moves, which the grown graph still allows
            EXPECT_TRUE(big[k].contains(v));
          } else {
            // a robot waiting at a dead end got there at some earlier step
            bool seen = false;
            for (std::size_t m = 0; m <= k; ++m) seen = seen || big[m].contains(v);
            EXPECT_TRUE(seen);
          }
        }
    }
  }
}

TEST(ReachablePositionsProperty, ZeroWpcSolutionsAreFullyPredictable) {
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 300 && checked < 25; ++seed) {
    auto rs = oracle::random_small_solution(seed);
    if (wpc(rs.solution, rs.weights) != 0.0) continue;
    ++checked;
    auto nav = union_subgraph(rs.graph, rs.solution.path_list());
    for (const auto& [t, p] : rs.solution.paths)
      for (auto v : p)
        for (const auto& s : reachable_positions(nav, v, 8)) EXPECT_EQ(s.size(), 1u);
  }
  EXPECT_GE(checked, 10);
}

TEST(EarliestCollision, SameCellSameStep) {
  std::vector<ScriptedPath> robots{{{0, 0}, {0, 1}, {0, 2}}};
  EXPECT_EQ(earliest_collision(robots, {{1, 2}, {1, 1}, {0, 2}}), 2);
  EXPECT_EQ(earliest_collision(robots, {{0, 0}}), 0);
}

TEST(EarliestCollision, SwapIsNotACollision) {
  std::vector<ScriptedPath> robots{{{0, 0}, {0, 1}}};
  EXPECT_FALSE(earliest_collision(robots, {{0, 1}, {0, 0}}));
}

TEST(EarliestCollision, FinishedAgentsWait) {
  std::vector<ScriptedPath> robots{{{0, 0}, {0, 1}}};
  EXPECT_EQ(earliest_collision(robots, {{2, 1}, {1, 1}, {0, 1}}), 2);
}

TEST(EarliestCollision, EmptyScriptsRejected) {
  EXPECT_THROW(earliest_collision({}, {}), std::invalid_argument);
  EXPECT_THROW(earliest_collision({{}}, {{0, 0}}), std::invalid_argument);
}

TEST(EarliestCollisionProperty, SymmetricInRobotOrder) {
  Rng rng(12);
  auto g = make_grid_graph(4, 4);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<ScriptedPath> robots;
    for (int k = 0; k < 3; ++k)
      robots.push_back(oracle::random_walk_path(g, g.vertices()[rng.uniform_below(16)], rng, 8));
    robots.erase(std::remove_if(robots.begin(), robots.end(), [](const auto& r) { return r.empty(); }),
                 robots.end());
    if (robots.empty()) continue;
    auto human = oracle::random_walk_path(g, g.vertices()[rng.uniform_below(16)], rng, 8);
    if (human.empty()) continue;
    const auto expected = earliest_collision(robots, human);
    std::sort(robots.begin(), robots.end());
    do {
      EXPECT_EQ(earliest_collision(robots, human), expected);
    } while (std::next_permutation(robots.begin(), robots.end()));
  }
}

TEST(Fixtures, ProblemOne) {
  const auto f = load("collision_problem1.json");
  const auto facts = fixture_facts(f);
  EXPECT_EQ(facts.vertices, 14u);
  EXPECT_EQ(facts.branching_vertices, 3u);
  EXPECT_EQ(facts.human_steps, 7u);
  EXPECT_EQ(facts.overlap_positions, 3u);
  EXPECT_EQ(facts.collision, 5);
  EXPECT_TRUE(facts.robots_follow_graph);
  EXPECT_TRUE(facts.human_moves_adjacent);
}

TEST(Fixtures, ProblemTwo) {
  const auto f = load("collision_problem2.json");
  const auto facts = fixture_facts(f);
  EXPECT_EQ(facts.vertices, 16u);
  EXPECT_EQ(facts.branching_vertices, 1u);
  EXPECT_EQ(facts.human_steps, 7u);
  EXPECT_EQ(facts.overlap_positions, 3u);
  EXPECT_EQ(facts.collision, 5);
  EXPECT_TRUE(facts.robots_follow_graph);
  EXPECT_TRUE(facts.human_moves_adjacent);
}

TEST(Fixtures, DisjointHasNoCollision) {
  const auto f = load("collision_disjoint.json");
  for (auto v : f.human)
    for (const auto& r : f.robots) EXPECT_EQ(std::count(r.begin(), r.end(), v), 0);
  EXPECT_FALSE(earliest_collision(f.robots, f.human));
}

}  // namespace
}  // namespace navmin

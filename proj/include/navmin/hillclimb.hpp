#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "navmin/candidates.hpp"
#include "navmin/graph.hpp"
#include "navmin/measures.hpp"
#include "navmin/problem.hpp"
#include "navmin/rng.hpp"

namespace navmin {

struct SearchConfig {
  int restart_count = 5;
  std::size_t population_cap = 20;
  CostFunction cost_function = CostFunction::BVC;
  std::uint64_t master_seed = 0;
  unsigned threads = 1;  // restarts run concurrently when > 1
};

struct RestartTrace {
  std::vector<std::pair<std::size_t, double>> steps;  // (iteration, cost) on each acceptance
  double best_cost = 0.0;

  friend bool operator==(const RestartTrace&, const RestartTrace&) = default;
};

struct SearchTrace {
  std::vector<RestartTrace> restarts;

  friend bool operator==(const SearchTrace&, const SearchTrace&) = default;
};

namespace detail {

inline bool definitely_less(double a, double b) {
  return a < b - 1e-12 * std::max(1.0, std::fabs(b));
}

inline bool about_equal(double a, double b) { return !definitely_less(a, b) && !definitely_less(b, a); }

/// One scan of Algorithm-2 style single-path replacement.
///
/// `cost_of(k)` and `length_of(k)` give the total cost and the individual
/// path cost with alternative k substituted. Returns the chosen alternative
/// (or nullopt to keep the current path) and the resulting cost.
template <typename CostOf, typename LengthOf>
std::pair<std::optional<std::size_t>, double> scan_replacements(double current_cost,
                                                                double current_length,
                                                                std::size_t alternatives,
                                                                CostOf&& cost_of,
                                                                LengthOf&& length_of) {
  std::optional<std::size_t> best;
  double min_cost = current_cost;
  double best_length = current_length;
  for (std::size_t k = 0; k < alternatives; ++k) {
    const double c = cost_of(k);
    const double len = length_of(k);
    if (definitely_less(c, min_cost)) {
      min_cost = c;
      best_length = len;
      best = k;
    } else if (about_equal(c, min_cost) && definitely_less(len, best_length)) {
      best_length = len;
      best = k;
    }
  }
  return {best, min_cost};
}

/// Dense evaluator of a path combination drawn from a candidate pool.
///
/// Holds scratch buffers sized to the host graph; one instance per thread.
class PoolScorer {
 public:
  PoolScorer(const ProblemInstance& instance, const CandidatePool& pool, CostFunction f)
      : function_(f) {
    const auto& g = instance.graph;
    for (const auto& t : instance.tasks) {
      weight_.push_back(instance.weights.at(t));
      auto& dense = paths_.emplace_back();
      auto& lengths = lengths_.emplace_back();
      for (const auto& p : pool.at(t)) {
        auto& d = dense.emplace_back();
        for (auto v : p) d.push_back(g.index_of(v));
        lengths.push_back(path_cost(g, p));
      }
    }
    const std::size_t n = g.vertex_count();
    stamp_.assign(n, 0);
    vertex_max_.assign(n, 0.0);
    succ_.assign(n, {});
  }

  std::size_t task_count() const { return paths_.size(); }
  std::size_t pool_size(std::size_t task) const { return paths_[task].size(); }
  double length(std::size_t task, std::size_t k) const { return lengths_[task][k]; }

  double cost(const std::vector<std::size_t>& choice) {
    ++epoch_;
    touched_.clear();
    for (std::size_t t = 0; t < choice.size(); ++t) {
      const double w = weight_[t];
      const auto& p = paths_[t][choice[t]];
      for (std::size_t i = 0; i < p.size(); ++i) {
        const int v = p[i];
        if (stamp_[v] != epoch_) {
          stamp_[v] = epoch_;
          vertex_max_[v] = w;
          succ_[v].clear();
          touched_.push_back(v);
        } else if (w > vertex_max_[v]) {
          vertex_max_[v] = w;
        }
        if (i + 1 < p.size()) {
          auto& s = succ_[v];
          auto it = std::find_if(s.begin(), s.end(), [&](const auto& e) { return e.first == p[i + 1]; });
          if (it == s.end())
            s.emplace_back(p[i + 1], w);
          else if (w > it->second)
            it->second = w;
        }
      }
    }
    double gsc = 0.0;
    for (int v : touched_) {
      gsc += vertex_max_[v];
      for (const auto& e : succ_[v]) gsc += e.second;
    }
    if (function_ == CostFunction::GSC) return gsc;

    double branching = 0.0;
    double degree = 0.0;
    for (std::size_t t = 0; t < choice.size(); ++t) {
      const double w = weight_[t];
      for (int v : paths_[t][choice[t]]) {
        const auto deg = succ_[v].size();
        degree += w * static_cast<double>(deg);
        if (deg > 1) branching += w;
      }
    }
    return branching * degree * gsc;
  }

 private:
  CostFunction function_;
  std::vector<double> weight_;
  std::vector<std::vector<std::vector<int>>> paths_;
  std::vector<std::vector<double>> lengths_;
  std::vector<std::uint64_t> stamp_;
  std::vector<double> vertex_max_;
  std::vector<std::vector<std::pair<int, double>>> succ_;
  std::vector<int> touched_;
  std::uint64_t epoch_ = 0;
};

struct RestartOutcome {
  std::vector<std::size_t> choice;
  double cost = 0.0;
  RestartTrace trace;
};

inline RestartOutcome run_restart(PoolScorer& scorer, std::uint64_t master_seed, int restart) {
  Rng rng = Rng::child(master_seed, static_cast<std::uint64_t>(restart));
  RestartOutcome out;
  out.choice.resize(scorer.task_count());
  for (std::size_t t = 0; t < scorer.task_count(); ++t)
    out.choice[t] = static_cast<std::size_t>(rng.uniform_below(scorer.pool_size(t)));
  out.cost = scorer.cost(out.choice);
  std::size_t iteration = 0;
  out.trace.steps.emplace_back(iteration, out.cost);

  while (true) {
    const double sweep_start = out.cost;
    for (std::size_t t = 0; t < scorer.task_count(); ++t) {
      ++iteration;
      const std::size_t current = out.choice[t];
      std::vector<std::size_t> trial = out.choice;
      auto [pick, new_cost] = scan_replacements(
          out.cost, scorer.length(t, current), scorer.pool_size(t),
          [&](std::size_t k) {
            trial[t] = k;
            return scorer.cost(trial);
          },
          [&](std::size_t k) { return scorer.length(t, k); });
      if (pick && definitely_less(new_cost, out.cost)) {
        out.choice[t] = *pick;
        out.cost = new_cost;
        out.trace.steps.emplace_back(iteration, new_cost);
      }
    }
    if (!definitely_less(out.cost, sweep_start)) break;
  }
  out.trace.best_cost = out.cost;
  return out;
}

}  // namespace detail

struct SearchResult {
  Solution solution;
  double cost = 0.0;
  SearchTrace trace;
};

/// Hill climbing with random restarts over single-path replacements.
///
/// Each restart draws its initial combination from its own seeded stream, so
/// the result does not depend on `config.threads`. Equal best costs resolve to
/// the lowest restart index.
inline SearchResult hc_search(const ProblemInstance& instance, const CandidatePool& pool,
                              const SearchConfig& config) {
  if (config.restart_count < 1) throw std::invalid_argument("restart count must be >= 1");
  for (const auto& t : instance.tasks)
    if (pool.at(t).empty()) throw InfeasibleError("empty candidate pool for " + to_string(t));

  const auto restarts = static_cast<std::size_t>(config.restart_count);
  std::vector<detail::RestartOutcome> outcomes(restarts);
  if (config.threads <= 1) {
    detail::PoolScorer scorer(instance, pool, config.cost_function);
    for (std::size_t r = 0; r < restarts; ++r)
      outcomes[r] = detail::run_restart(scorer, config.master_seed, static_cast<int>(r));
  } else {
    std::vector<std::future<void>> jobs;
    const std::size_t workers = std::min<std::size_t>(config.threads, restarts);
    for (std::size_t w = 0; w < workers; ++w) {
      jobs.push_back(std::async(std::launch::async, [&, w] {
        detail::PoolScorer scorer(instance, pool, config.cost_function);
        for (std::size_t r = w; r < restarts; r += workers)
          outcomes[r] = detail::run_restart(scorer, config.master_seed, static_cast<int>(r));
      }));
    }
    for (auto& j : jobs) j.get();
  }

  std::size_t best = 0;
  for (std::size_t r = 1; r < restarts; ++r)
    if (outcomes[r].cost < outcomes[best].cost) best = r;

  SearchResult result;
  result.cost = outcomes[best].cost;
  for (std::size_t t = 0; t < instance.tasks.size(); ++t) {
    const auto& task = instance.tasks[t];
    result.solution.paths[task] = pool.at(task)[outcomes[best].choice[t]];
  }
  for (auto& o : outcomes) result.trace.restarts.push_back(std::move(o.trace));
  return result;
}

struct Replacement {
  double cost = 0.0;
  Solution solution;
};

/// Best single-path replacement for `task` among its pool paths.
///
/// Accepts a lower total cost, or an equal total cost with a shorter path.
inline Replacement replace_path(const Task& task, const ProblemInstance& instance,
                                const Solution& chosen, const CandidatePool& pool,
                                CostFunction f) {
  const auto& alternatives = pool.at(task);
  const double current_cost = cost(f, chosen, instance.weights);
  const double current_length = path_cost(instance.graph, chosen.paths.at(task));
  Solution trial = chosen;
  auto [pick, new_cost] = detail::scan_replacements(
      current_cost, current_length, alternatives.size(),
      [&](std::size_t k) {
        trial.paths[task] = alternatives[k];
        return cost(f, trial, instance.weights);
      },
      [&](std::size_t k) { return path_cost(instance.graph, alternatives[k]); });
  Replacement out{new_cost, chosen};
  if (pick) out.solution.paths[task] = alternatives[*pick];
  return out;
}

/// Replaces a task's path by one routed entirely through the other tasks'
/// paths when that route is within the cutoff and does not raise the cost.
/// Single pass in task order.
inline Solution drop_redundant_paths(const ProblemInstance& instance, const Solution& chosen,
                                     CostFunction f) {
  Solution current = chosen;
  double current_cost = cost(f, current, instance.weights);
  for (const auto& task : instance.tasks) {
    std::vector<Path> others;
    for (const auto& [t, p] : current.paths)
      if (t != task) others.push_back(p);
    if (others.empty()) continue;
    const DirectedGraph rest = union_subgraph(instance.graph, others);
    if (!rest.contains(task.src) || !rest.contains(task.dst)) continue;
    if (!reachable(rest, task.src, task.dst)) continue;
    Path induced = min_wpc_shortest_path(rest, task, instance.weights);
    if (induced == current.paths.at(task)) continue;
    if (!within_cutoff(path_cost(instance.graph, induced), instance.cutoffs.at(task))) continue;
    Solution trial = current;
    trial.paths[task] = std::move(induced);
    const double trial_cost = cost(f, trial, instance.weights);
    if (!detail::definitely_less(current_cost, trial_cost)) {
      current = std::move(trial);
      current_cost = trial_cost;
    }
  }
  return current;
}

/// Exhaustive minimum over the pool's Cartesian product.
///
/// Combinations are visited in lexicographic order of pool indices (first
/// task most significant); the first strict minimum wins.
inline Solution brute_force_min(const ProblemInstance& instance, const CandidatePool& pool,
                                CostFunction f, std::size_t bound = 1'000'000) {
  const std::size_t total = pool.combinations(bound);
  if (total == 0) throw InfeasibleError("empty candidate pool");
  if (total > bound)
    throw std::length_error("brute force over more than " + std::to_string(bound) +
                            " combinations refused");
  const auto& tasks = instance.tasks;
  std::vector<std::size_t> index(tasks.size(), 0);
  Solution trial;
  for (const auto& t : tasks) trial.paths[t] = pool.at(t)[0];
  Solution best = trial;
  double best_cost = cost(f, trial, instance.weights);
  while (true) {
    std::size_t pos = tasks.size();
    while (pos > 0) {
      --pos;
      const auto& alts = pool.at(tasks[pos]);
      if (++index[pos] < alts.size()) {
        trial.paths[tasks[pos]] = alts[index[pos]];
        break;
      }
      index[pos] = 0;
      trial.paths[tasks[pos]] = alts[0];
      if (pos == 0) return best;
    }
    if (tasks.empty()) return best;
    const double c = cost(f, trial, instance.weights);
    if (c < best_cost) {
      best_cost = c;
      best = trial;
    }
  }
}

struct MinimizeResult {
  DirectedGraph navigation_graph;
  PredictabilityReport report;
  SearchTrace trace;
  Solution solution;
};

/// Candidate generation, hill climbing, redundant-path dropping and reporting.
inline MinimizeResult minimize(const ProblemInstance& instance, const SearchConfig& config) {
  const CandidatePool pool =
      build_candidates(instance.graph, instance.tasks, instance.cutoffs, config.population_cap);
  SearchResult found = hc_search(instance, pool, config);
  Solution final_paths = drop_redundant_paths(instance, found.solution, config.cost_function);
  MinimizeResult out;
  out.navigation_graph = union_subgraph(instance.graph, final_paths.path_list());
  out.report = report(final_paths, instance);
  out.trace = std::move(found.trace);
  out.solution = std::move(final_paths);
  return out;
}

}  // namespace navmin

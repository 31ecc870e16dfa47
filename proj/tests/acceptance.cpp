// Acceptance gate: runs the experiment sweep, the pool-optimum recovery study
// and the fixture checks, then prints one PASS/FAIL line per criterion.
// Exit status is nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <iostream>
#include <limits>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include "navmin/cli.hpp"
#include "navmin/navmin.hpp"

namespace {

using namespace navmin;

constexpr double kInf = std::numeric_limits<double>::infinity();
const std::vector<double> kMultipliers{1, 2, 3, 5};
const std::vector<int> kTerminals{3, 4, 6, 8};

int failures = 0;

void verdict(int id, bool ok, const std::string& title, const std::string& detail) {
  std::cout << (ok ? "PASS" : "FAIL") << " criterion " << id << " (" << title << "): " << detail
            << std::endl;
  if (!ok) ++failures;
}

std::string fmt(double x) {
  if (std::isinf(x)) return "inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

// Median with +inf sorting above every finite value.
double median(std::vector<double> xs) {
  if (xs.empty()) return std::numeric_limits<double>::quiet_NaN();
  std::sort(xs.begin(), xs.end());
  const std::size_t n = xs.size();
  if (n % 2 == 1) return xs[n / 2];
  const double a = xs[n / 2 - 1];
  const double b = xs[n / 2];
  if (std::isinf(a) || std::isinf(b)) return std::max(a, b);
  return 0.5 * (a + b);
}

struct Medians {
  double wpc, nv_nbv, avg_subopt;
};

Medians medians_for(const std::vector<ResultRow>& rows, int terminals, double multiplier,
                    CostFunction f) {
  std::vector<double> wpc, nv, sub;
  for (const auto& r : rows)
    if (r.ok() && r.num_terminals == terminals && r.cutoff_multiplier == multiplier &&
        r.cost_function == f) {
      wpc.push_back(r.wpc);
      nv.push_back(r.nv_nbv);
      sub.push_back(r.avg_suboptimality);
    }
  return {median(wpc), median(nv), median(sub)};
}

bool bvc_better(const std::vector<ResultRow>& rows, int terminals, double multiplier,
                std::ostringstream& log) {
  const auto b = medians_for(rows, terminals, multiplier, CostFunction::BVC);
  const auto g = medians_for(rows, terminals, multiplier, CostFunction::GSC);
  const bool ok = b.wpc < g.wpc && b.nv_nbv > g.nv_nbv;
  log << " [n=" << terminals << " m=" << fmt(multiplier) << " wpc " << fmt(b.wpc) << "/" << fmt(g.wpc)
      << " nv " << fmt(b.nv_nbv) << "/" << fmt(g.nv_nbv) << (ok ? "" : " x") << "]";
  return ok;
}

template <typename Before>
int inversions(const std::vector<double>& xs, Before&& violates) {
  int n = 0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i)
    if (violates(xs[i], xs[i + 1])) ++n;
  return n;
}

std::string join(const std::vector<double>& xs) {
  std::string s;
  for (double x : xs) s += (s.empty() ? "" : " -> ") + fmt(x);
  return s;
}

bool strictly_decreasing(const SearchTrace& trace) {
  for (const auto& r : trace.restarts) {
    if (r.steps.empty()) return false;
    for (std::size_t i = 1; i < r.steps.size(); ++i)
      if (!(r.steps[i].second < r.steps[i - 1].second)) return false;
  }
  return true;
}

CollisionFixture load_fixture(const std::string& name) {
  return fixture_from_json(read_json_file(std::string(NAVMIN_FIXTURE_DIR) + "/" + name));
}

// Runs every cell of the experiment grid once, checking cutoffs and traces
// of each minimized graph as it is produced.
struct SweepOutcome {
  std::vector<ResultRow> rows;
  std::size_t runs = 0;
  std::size_t cutoff_violations = 0;
  std::size_t tasks_checked = 0;
  std::size_t non_decreasing_traces = 0;
  double seconds = 0.0;
};

SweepOutcome full_sweep() {
  SweepConfig cfg;
  cfg.mode = SweepMode::Full;
  cfg.terminal_counts = kTerminals;
  cfg.cutoff_multipliers = kMultipliers;
  cfg.threads = cli::default_threads();
  SweepOutcome out;
  const auto start = std::chrono::steady_clock::now();
  out.rows = run_sweep(cfg, SearchConfig{}, [&](const ProblemInstance& inst, CostFunction,
                                                const MinimizeResult& res) {
    ++out.runs;
    for (const auto& t : inst.tasks) {
      ++out.tasks_checked;
      auto p = shortest_path(res.navigation_graph, t.src, t.dst);
      if (!p || !within_cutoff(path_cost(res.navigation_graph, *p), inst.cutoffs.at(t)))
        ++out.cutoff_violations;
    }
    if (!strictly_decreasing(res.trace)) ++out.non_decreasing_traces;
  });
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return out;
}

void criterion1(const SweepOutcome& s) {
  std::size_t errors = 0;
  for (const auto& r : s.rows)
    if (!r.ok()) ++errors;
  std::ostringstream d;
  d << s.cutoff_violations << " violations over " << s.tasks_checked << " tasks in " << s.runs
    << " runs, " << errors << " failed runs, " << fmt(s.seconds) << " s";
  verdict(1, s.cutoff_violations == 0 && errors == 0 && s.runs == 320, "cutoff feasibility", d.str());
}

void criterion2(const SweepOutcome& s) {
  std::ostringstream d;
  const bool defaults = bvc_better(s.rows, 6, 3.0, d);
  int mult_ok = 0;
  for (double m : kMultipliers) mult_ok += bvc_better(s.rows, 6, m, d) ? 1 : 0;
  int term_ok = 0;
  for (int n : kTerminals) term_ok += bvc_better(s.rows, n, 3.0, d) ? 1 : 0;
  std::ostringstream head;
  head << "defaults " << (defaults ? "ok" : "not ok") << ", multipliers " << mult_ok
       << "/4, terminals " << term_ok << "/4;" << d.str();
  verdict(2, defaults && mult_ok >= 3 && term_ok >= 3, "BVC beats GSC", head.str());
}

void criterion3(const SweepOutcome& s) {
  std::vector<double> wpc, nv;
  for (double m : kMultipliers) {
    const auto b = medians_for(s.rows, 6, m, CostFunction::BVC);
    wpc.push_back(b.wpc);
    nv.push_back(b.nv_nbv);
  }
  const int wpc_inv = inversions(wpc, [](double a, double b) { return b > a; });
  const int nv_inv = inversions(nv, [](double a, double b) { return b < a; });
  std::ostringstream d;
  d << "median BVC wpc " << join(wpc) << " (" << wpc_inv << " inversions); nv_nbv " << join(nv) << " ("
    << nv_inv << " inversions)";
  verdict(3, wpc_inv <= 1 && nv_inv <= 1, "trend with allowed suboptimality", d.str());
}

void criterion4(const SweepOutcome& s) {
  std::vector<double> sub;
  bool ok = true;
  for (double m : kMultipliers) {
    const double x = medians_for(s.rows, 6, m, CostFunction::BVC).avg_subopt;
    sub.push_back(x);
    ok = ok && x < 2.0;
  }
  ok = ok && sub.front() == 1.0;
  verdict(4, ok, "average suboptimality bound", "median BVC avgSuboptimality " + join(sub));
}

void criterion5() {
  const auto start = std::chrono::steady_clock::now();
  int matches = 0;
  int beaten = 0;
  std::ostringstream d;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    InstanceParams p;
    p.seed = seed;
    p.grid_width = 5;
    p.grid_height = 5;
    p.num_terminals = 3;
    const auto inst = random_instance(p);
    const auto pool = build_candidates(inst.graph, inst.tasks, inst.cutoffs, 4);
    SearchConfig cfg;
    cfg.restart_count = 20;
    cfg.population_cap = 4;
    cfg.cost_function = CostFunction::BVC;
    cfg.master_seed = seed;
    const double hc = hc_search(inst, pool, cfg).cost;
    const double bf = cost(cfg.cost_function, brute_force_min(inst, pool, cfg.cost_function), inst.weights);
    if (detail::about_equal(hc, bf)) ++matches;
    if (detail::definitely_less(hc, bf)) ++beaten;
    d << " " << fmt(hc) << (detail::about_equal(hc, bf) ? "=" : "/") << fmt(bf);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  std::ostringstream head;
  head << matches << "/10 match brute force, " << beaten << " beat it, " << fmt(secs) << " s;" << d.str();
  verdict(5, matches >= 8 && beaten == 0 && secs < 10.0, "pool-optimum recovery", head.str());
}

bool identities_hold(const MeasureTotals& m) {
  if (m.bvc() != m.wpc() * m.gsc) return false;
  if ((m.wpc() == 0.0) != (m.branching_vertices == 0)) return false;
  if (std::isinf(m.nv_nbv()) != (m.wpc() == 0.0)) return false;
  return !std::isinf(m.nv_nbv()) || m.nv_nbv() == kInf;
}

void criterion6() {
  int checked = 0;
  int bad = 0;
  int zero = 0;
  // randomized small solutions on grids up to 4x4
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    Rng rng(seed);
    const int w = 2 + static_cast<int>(rng.uniform_below(3));
    const int h = 2 + static_cast<int>(rng.uniform_below(3));
    auto g = make_grid_graph(w, h);
    Solution s;
    std::map<Task, double> raw;
    for (int k = 0, tries = 0; k < 1 + static_cast<int>(seed % 4) && tries < 50; ++tries) {
      Path p{g.vertices()[rng.uniform_below(g.vertex_count())]};
      const std::size_t len = 2 + rng.uniform_below(6);
      while (p.size() < len) {
        std::vector<VertexId> next;
        for (auto v : g.successors(p.back()))
          if (std::find(p.begin(), p.end(), v) == p.end()) next.push_back(v);
        if (next.empty()) break;
        p.push_back(next[rng.uniform_below(next.size())]);
      }
      if (p.size() < 2) continue;
      Task t(p.front(), p.back());
      if (s.paths.contains(t)) continue;
      s.paths[t] = p;
      raw[t] = 0.05 + rng.uniform01();
      ++k;
    }
    double sum = 0.0;
    for (auto& [t, x] : raw) sum += x;
    for (auto& [t, x] : raw) x /= sum;
    const auto m = evaluate(s, TaskWeights(raw));
    ++checked;
    if (m.wpc() == 0.0) ++zero;
    if (!identities_hold(m)) ++bad;
  }
  // hand-built: the two collision fixtures with their robot scripts as paths,
  // and a plain chain
  for (const char* name : {"collision_problem1.json", "collision_problem2.json"}) {
    const auto f = load_fixture(name);
    Solution s;
    for (const auto& r : f.robots) s.paths[Task(r.front(), r.back())] = r;
    std::vector<Task> tasks;
    for (const auto& [t, p] : s.paths) tasks.push_back(t);
    ++checked;
    if (!identities_hold(evaluate_in(f.graph, s, TaskWeights::uniform(tasks)))) ++bad;
  }
  {
    Solution s;
    Task t({0, 0}, {0, 3});
    s.paths[t] = {{0, 0}, {0, 1}, {0, 2}, {0, 3}};
    const auto m = evaluate(s, TaskWeights({{t, 1.0}}));
    ++checked;
    if (!identities_hold(m) || m.wpc() != 0.0 || m.nv_nbv() != kInf) ++bad;
  }
  std::ostringstream d;
  d << bad << " violations over " << checked << " solutions (" << zero << " random ones with zero wpc)";
  verdict(6, bad == 0 && checked == 103, "measure identities", d.str());
}

void criterion7() {
  std::ostringstream d;
  bool ok = true;
  struct Expect {
    const char* file;
    std::size_t vertices, branching;
  };
  for (const Expect& e : {Expect{"collision_problem1.json", 14, 3}, Expect{"collision_problem2.json", 16, 1}}) {
    std::ostringstream out, err;
    const int code =
        cli::run({"collide", "--fixture", std::string(NAVMIN_FIXTURE_DIR) + "/" + e.file}, out, err);
    const auto facts = fixture_facts(load_fixture(e.file));
    const bool this_ok = code == 0 && out.str() == "5\n" && facts.vertices == e.vertices &&
                         facts.branching_vertices == e.branching && facts.human_steps == 7 &&
                         facts.overlap_positions == 3 && facts.robots_follow_graph &&
                         facts.human_moves_adjacent;
    ok = ok && this_ok;
    std::string step = out.str();
    if (!step.empty() && step.back() == '\n') step.pop_back();
    d << " " << e.file << ": step " << step << ", " << facts.vertices << " vertices, "
      << facts.branching_vertices << " branching, " << facts.human_steps << " steps, "
      << facts.overlap_positions << " overlaps;";
  }
  verdict(7, ok, "fixture collision step", d.str());
}

void criterion8(const SweepOutcome& s) {
  int identical = 0;
  int total = 0;
  for (std::uint64_t seed : {0u, 3u, 7u})
    for (auto f : {CostFunction::GSC, CostFunction::BVC}) {
      InstanceParams p;
      p.seed = seed;
      const auto inst = random_instance(p);
      SearchConfig cfg;
      cfg.cost_function = f;
      cfg.master_seed = seed;
      const auto a = minimize(inst, cfg);
      cfg.threads = 4;
      const auto b = minimize(inst, cfg);
      const auto c = minimize(instance_from_json(instance_to_json(inst)), cfg);
      const auto ja = graph_to_json(a.navigation_graph).dump();
      ++total;
      if (ja == graph_to_json(b.navigation_graph).dump() && ja == graph_to_json(c.navigation_graph).dump())
        ++identical;
    }
  std::ostringstream d;
  d << identical << "/" << total << " reruns byte-identical; " << s.non_decreasing_traces << " of "
    << s.runs << " sweep traces not strictly decreasing";
  verdict(8, identical == total && s.non_decreasing_traces == 0 && s.runs > 0, "determinism and anytime",
          d.str());
}

}  // namespace

int main() {
  try {
    const auto sweep = full_sweep();
    criterion1(sweep);
    criterion2(sweep);
    criterion3(sweep);
    criterion4(sweep);
    criterion5();
    criterion6();
    criterion7();
    criterion8(sweep);
  } catch (const std::exception& ex) {
    std::cout << "FAIL acceptance aborted: " << ex.what() << std::endl;
    return 1;
  }
  std::cout << (failures == 0 ? "all criteria passed" : std::to_string(failures) + " criteria failed")
            << std::endl;
  return failures == 0 ? 0 : 1;
}

#pragma once

#include <cstdlib>
#include <fstream>
#include <ios>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "navmin/conflict.hpp"
#include "navmin/hillclimb.hpp"
#include "navmin/instance_gen.hpp"
#include "navmin/io.hpp"
#include "navmin/sweep.hpp"

namespace navmin::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kInfeasible = 3, kIo = 4 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// "WxH" -> (W, H).
inline std::pair<int, int> parse_grid(const std::string& s) {
  const auto x = s.find_first_of("xX");
  try {
    if (x == std::string::npos) throw UsageError("");
    std::size_t used = 0;
    const int w = std::stoi(s.substr(0, x), &used);
    if (used != x) throw UsageError("");
    const std::string rest = s.substr(x + 1);
    const int h = std::stoi(rest, &used);
    if (used != rest.size()) throw UsageError("");
    return {w, h};
  } catch (const std::exception&) {
    throw UsageError("--grid expects WxH, got '" + s + "'");
  }
}

/// "A..B" (inclusive) or a single integer.
inline std::vector<std::uint64_t> parse_seed_range(const std::string& s) {
  try {
    const auto dots = s.find("..");
    std::size_t used = 0;
    if (dots == std::string::npos) {
      const auto v = std::stoull(s, &used);
      if (used != s.size()) throw UsageError("");
      return {v};
    }
    const std::string a = s.substr(0, dots);
    const std::string b = s.substr(dots + 2);
    const auto lo = std::stoull(a, &used);
    if (used != a.size()) throw UsageError("");
    const auto hi = std::stoull(b, &used);
    if (used != b.size() || hi < lo) throw UsageError("");
    std::vector<std::uint64_t> out;
    for (auto v = lo; v <= hi; ++v) out.push_back(v);
    return out;
  } catch (const std::exception&) {
    throw UsageError("--seeds expects A..B, got '" + s + "'");
  }
}

/// Worker count for sweeps: NAVMIN_THREADS if set, else hardware threads.
inline unsigned default_threads() {
  if (const char* env = std::getenv("NAVMIN_THREADS")) {
    try {
      const long n = std::stol(env);
      if (n >= 1) return static_cast<unsigned>(n);
    } catch (const std::exception&) {
    }
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

inline void write_or_print(const std::string& file, const std::string& text, std::ostream& out) {
  if (file.empty() || file == "-")
    out << text;
  else
    write_text_file(file, text);
}

struct GenerateArgs {
  std::uint64_t seed = 0;
  std::string grid = "20x20";
  double drop_vertices = 0.2;
  double drop_edges = 0.2;
  int terminals = 6;
  double cutoff = 3.0;
  std::string out;
};

inline int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  auto [w, h] = parse_grid(a.grid);
  InstanceParams p;
  p.seed = a.seed;
  p.grid_width = w;
  p.grid_height = h;
  p.drop_vertex_frac = a.drop_vertices;
  p.drop_edge_frac = a.drop_edges;
  p.num_terminals = a.terminals;
  p.cutoff_multiplier = a.cutoff;
  ProblemInstance inst;
  try {
    inst = random_instance(p);
  } catch (const std::invalid_argument& ex) {
    throw UsageError(ex.what());
  }
  write_or_print(a.out, instance_to_json(inst).dump(2) + "\n", out);
  return kOk;
}

struct MinimizeArgs {
  std::string instance;
  std::string cost = "bvc";
  int restarts = 5;
  std::uint64_t seed = 0;
  std::size_t population = 20;
  unsigned threads = 1;
  std::string out;
  std::string dot;
  std::string trace;
};

inline int cmd_minimize(const MinimizeArgs& a, std::ostream& out) {
  CostFunction f;
  try {
    f = parse_cost_function(a.cost);
  } catch (const std::invalid_argument& ex) {
    throw UsageError(ex.what());
  }
  const ProblemInstance inst = instance_from_json(read_json_file(a.instance));
  SearchConfig cfg;
  cfg.cost_function = f;
  cfg.restart_count = a.restarts;
  cfg.master_seed = a.seed;
  cfg.population_cap = a.population;
  cfg.threads = a.threads;
  const MinimizeResult res = minimize(inst, cfg);

  json report = report_to_json(res.report);
  report["cost_function"] = std::string(to_string(f));
  if (!a.out.empty()) {
    json nav = graph_to_json(res.navigation_graph);
    nav["paths"] = solution_to_json(res.solution);
    nav["report"] = report;
    write_text_file(a.out, nav.dump(2) + "\n");
  }
  if (!a.dot.empty()) {
    std::vector<VertexId> terminals;
    for (const auto& t : inst.tasks) {
      terminals.push_back(t.src);
      terminals.push_back(t.dst);
    }
    write_text_file(a.dot, to_dot(res.navigation_graph, terminals));
  }
  if (!a.trace.empty()) write_text_file(a.trace, trace_to_json(res.trace).dump(2) + "\n");
  out << report.dump(2) << "\n";
  return kOk;
}

struct SweepArgs {
  std::string vary = "cutoff";
  std::string seeds = "0..9";
  std::string out;
  int restarts = 5;
  std::size_t population = 20;
  unsigned threads = 0;  // 0: default_threads()
};

inline int cmd_sweep(const SweepArgs& a, std::ostream& out, std::ostream& err) {
  SweepConfig cfg;
  if (a.vary == "cutoff")
    cfg.mode = SweepMode::VaryCutoff;
  else if (a.vary == "terminals")
    cfg.mode = SweepMode::VaryTerminals;
  else if (a.vary == "all")
    cfg.mode = SweepMode::Full;
  else
    throw UsageError("--vary expects cutoff, terminals or all");
  cfg.seeds = parse_seed_range(a.seeds);
  cfg.threads = a.threads == 0 ? default_threads() : a.threads;
  SearchConfig search;
  search.restart_count = a.restarts;
  search.population_cap = a.population;
  const auto rows = run_sweep(cfg, search);
  std::ostringstream csv;
  write_csv(csv, rows);
  write_or_print(a.out, csv.str(), out);
  std::size_t failures = 0;
  for (const auto& r : rows)
    if (!r.ok()) ++failures;
  if (failures > 0) err << "warning: " << failures << " of " << rows.size() << " runs failed\n";
  return kOk;
}

struct CollideArgs {
  std::string fixture;
  bool facts = false;
};

inline int cmd_collide(const CollideArgs& a, std::ostream& out) {
  const CollisionFixture f = fixture_from_json(read_json_file(a.fixture));
  if (a.facts) {
    const FixtureFacts facts = fixture_facts(f);
    json j{{"vertices", facts.vertices},
           {"branching_vertices", facts.branching_vertices},
           {"human_steps", facts.human_steps},
           {"overlap_positions", facts.overlap_positions},
           {"collision", facts.collision ? json(*facts.collision) : json("none")}};
    out << j.dump(2) << "\n";
    return kOk;
  }
  const auto step = earliest_collision(f.robots, f.human);
  out << (step ? std::to_string(*step) : std::string("none")) << "\n";
  return kOk;
}

/// Entry point shared by the navmin executable and the tests.
inline int run(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Navigation-graph minimization for position-based predictability", "navmin"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Write a seeded random grid instance");
  generate->add_option("--seed", gen.seed, "Random seed")->capture_default_str();
  generate->add_option("--grid", gen.grid, "Grid size WxH")->capture_default_str();
  generate->add_option("--drop-vertices", gen.drop_vertices, "Fraction of vertices removed")
      ->check(CLI::Range(0.0, 0.999999))
      ->capture_default_str();
  generate->add_option("--drop-edges", gen.drop_edges, "Fraction of remaining directed edges removed")
      ->check(CLI::Range(0.0, 0.999999))
      ->capture_default_str();
  generate->add_option("--terminals", gen.terminals, "Number of terminal vertices (>= 2)")
      ->check(CLI::Range(2, 1 << 20))
      ->capture_default_str();
  generate->add_option("--cutoff", gen.cutoff, "Cutoff as a multiple of each optimal task cost")
      ->check(CLI::Range(1.0, 1e9))
      ->capture_default_str();
  generate->add_option("--out", gen.out, "Output file (stdout if omitted)");

  MinimizeArgs mini;
  auto* minimize_cmd = app.add_subcommand("minimize", "Minimize an instance's navigation graph");
  minimize_cmd->add_option("--instance", mini.instance, "Instance JSON file")->required();
  minimize_cmd->add_option("--cost", mini.cost, "Search cost function: gsc or bvc")
      ->check(CLI::IsMember({"gsc", "bvc"}))
      ->capture_default_str();
  minimize_cmd->add_option("--restarts", mini.restarts, "Random restarts")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  minimize_cmd->add_option("--seed", mini.seed, "Master seed for restarts")->capture_default_str();
  minimize_cmd->add_option("--population", mini.population, "Candidate paths per task")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  minimize_cmd->add_option("--threads", mini.threads, "Concurrent restarts")->capture_default_str();
  minimize_cmd->add_option("--out", mini.out, "Navigation graph JSON output");
  minimize_cmd->add_option("--dot", mini.dot, "Graphviz DOT output");
  minimize_cmd->add_option("--trace", mini.trace, "Search trace JSON output");

  SweepArgs sw;
  auto* sweep = app.add_subcommand("sweep", "Run the GSC vs BVC experiment sweep, write CSV");
  sweep->add_option("--vary", sw.vary, "cutoff, terminals or all")
      ->check(CLI::IsMember({"cutoff", "terminals", "all"}))
      ->capture_default_str();
  sweep->add_option("--seeds", sw.seeds, "Seed range A..B (inclusive)")->capture_default_str();
  sweep->add_option("--out", sw.out, "CSV output file (stdout if omitted)");
  sweep->add_option("--restarts", sw.restarts, "Random restarts per run")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep->add_option("--population", sw.population, "Candidate paths per task")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  sweep->add_option("--threads", sw.threads, "Worker threads (default: NAVMIN_THREADS or all cores)");

  CollideArgs col;
  auto* collide = app.add_subcommand("collide", "Earliest human-robot collision step of a fixture");
  collide->add_option("--fixture", col.fixture, "Fixture JSON file")->required();
  collide->add_flag("--facts", col.facts, "Print fixture summary facts as JSON instead");

  try {
    std::reverse(args.begin(), args.end());
    app.parse(args);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    if (!app.get_subcommands().empty()) err << app.get_subcommands().front()->help();
    return kUsage;
  }

  try {
    if (generate->parsed()) return cmd_generate(gen, out);
    if (minimize_cmd->parsed()) return cmd_minimize(mini, out);
    if (sweep->parsed()) return cmd_sweep(sw, out, err);
    if (collide->parsed()) return cmd_collide(col, out);
  } catch (const UsageError& ex) {
    err << "error: " << ex.what() << "\n";
    return kUsage;
  } catch (const InfeasibleError& ex) {
    err << "infeasible: " << ex.what() << "\n";
    return kInfeasible;
  } catch (const FormatError& ex) {
    err << "input error: " << ex.what() << "\n";
    return kIo;
  } catch (const std::ios_base::failure& ex) {
    err << "i/o error: " << ex.what() << "\n";
    return kIo;
  } catch (const std::exception& ex) {
    err << "error: " << ex.what() << "\n";
    return 1;
  }
  return kUsage;
}

}  // namespace navmin::cli

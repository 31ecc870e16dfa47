#pragma once

#include <atomic>
#include <charconv>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <istream>
#include <limits>
#include <mutex>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "navmin/hillclimb.hpp"
#include "navmin/instance_gen.hpp"
#include "navmin/io.hpp"
#include "navmin/measures.hpp"

namespace navmin {

/// One minimization run in a sweep.
struct ResultRow {
  std::uint64_t seed = 0;
  int num_terminals = 0;
  double cutoff_multiplier = 0.0;
  CostFunction cost_function = CostFunction::BVC;
  double wpc = 0.0;
  double nv_nbv = 0.0;
  double gsc = 0.0;
  double bvc = 0.0;
  std::size_t branching_vertex_count = 0;
  std::size_t num_vertices = 0;
  std::size_t num_edges = 0;
  double avg_suboptimality = 0.0;
  double runtime_ms = 0.0;
  std::string instance_hash;
  std::string error;  // empty on success

  bool ok() const { return error.empty(); }
  friend bool operator==(const ResultRow&, const ResultRow&) = default;
};

enum class SweepMode { VaryCutoff, VaryTerminals, Full };

struct SweepConfig {
  SweepMode mode = SweepMode::VaryCutoff;
  std::vector<int> terminal_counts{3, 4, 6, 8};
  std::vector<double> cutoff_multipliers{1, 2, 3, 5};
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4, 5, 6, 7, 8, 9};
  std::vector<CostFunction> cost_functions{CostFunction::GSC, CostFunction::BVC};
  int default_terminals = 6;
  double default_multiplier = 3.0;
  int grid_width = 20;
  int grid_height = 20;
  double drop_vertex_frac = 0.2;
  double drop_edge_frac = 0.2;
  unsigned threads = 1;
};

struct SweepSetting {
  int num_terminals;
  double cutoff_multiplier;
};

inline std::vector<SweepSetting> sweep_settings(const SweepConfig& cfg) {
  if (cfg.terminal_counts.empty() || cfg.cutoff_multipliers.empty() || cfg.seeds.empty() ||
      cfg.cost_functions.empty())
    throw std::invalid_argument("sweep lists must be nonempty");
  std::vector<SweepSetting> out;
  switch (cfg.mode) {
    case SweepMode::VaryCutoff:
      for (double m : cfg.cutoff_multipliers) out.push_back({cfg.default_terminals, m});
      break;
    case SweepMode::VaryTerminals:
      for (int n : cfg.terminal_counts) out.push_back({n, cfg.default_multiplier});
      break;
    case SweepMode::Full:
      for (int n : cfg.terminal_counts)
        for (double m : cfg.cutoff_multipliers) out.push_back({n, m});
      break;
  }
  return out;
}

/// Called once per successful run, serialized across workers.
using SweepObserver =
    std::function<void(const ProblemInstance&, CostFunction, const MinimizeResult&)>;

/// Runs every (setting, seed) cell: one instance, minimized under each cost
/// function. Rows are ordered by (setting, seed, cost function) regardless of
/// the number of worker threads. Failures become error rows.
inline std::vector<ResultRow> run_sweep(const SweepConfig& cfg, const SearchConfig& search,
                                        const SweepObserver& observer = {}) {
  const auto settings = sweep_settings(cfg);
  struct Cell {
    SweepSetting setting;
    std::uint64_t seed;
  };
  std::vector<Cell> cells;
  for (const auto& s : settings)
    for (auto seed : cfg.seeds) cells.push_back({s, seed});

  const std::size_t per_cell = cfg.cost_functions.size();
  std::vector<ResultRow> rows(cells.size() * per_cell);
  std::mutex observer_lock;

  auto run_cell = [&](std::size_t c) {
    const Cell& cell = cells[c];
    ResultRow base;
    base.seed = cell.seed;
    base.num_terminals = cell.setting.num_terminals;
    base.cutoff_multiplier = cell.setting.cutoff_multiplier;
    std::optional<ProblemInstance> instance;
    std::string gen_error;
    try {
      InstanceParams p;
      p.seed = cell.seed;
      p.grid_width = cfg.grid_width;
      p.grid_height = cfg.grid_height;
      p.drop_vertex_frac = cfg.drop_vertex_frac;
      p.drop_edge_frac = cfg.drop_edge_frac;
      p.num_terminals = cell.setting.num_terminals;
      p.cutoff_multiplier = cell.setting.cutoff_multiplier;
      instance = random_instance(p);
      base.instance_hash = instance_hash(*instance);
    } catch (const std::exception& ex) {
      gen_error = ex.what();
    }
    for (std::size_t k = 0; k < per_cell; ++k) {
      ResultRow row = base;
      row.cost_function = cfg.cost_functions[k];
      if (!instance) {
        row.error = gen_error;
      } else {
        try {
          SearchConfig sc = search;
          sc.cost_function = row.cost_function;
          sc.threads = 1;
          const auto start = std::chrono::steady_clock::now();
          MinimizeResult res = minimize(*instance, sc);
          row.runtime_ms = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - start)
                               .count();
          row.wpc = res.report.wpc;
          row.nv_nbv = res.report.nv_nbv;
          row.gsc = res.report.gsc;
          row.bvc = res.report.bvc;
          row.branching_vertex_count = res.report.branching_vertex_count;
          row.num_vertices = res.report.num_vertices;
          row.num_edges = res.report.num_edges;
          row.avg_suboptimality = res.report.avg_suboptimality;
          if (observer) {
            std::lock_guard lock(observer_lock);
            observer(*instance, row.cost_function, res);
          }
        } catch (const std::exception& ex) {
          row.error = ex.what();
        }
      }
      rows[c * per_cell + k] = std::move(row);
    }
  };

  const std::size_t workers = std::max<std::size_t>(1, std::min<std::size_t>(cfg.threads, cells.size()));
  if (workers == 1) {
    for (std::size_t c = 0; c < cells.size(); ++c) run_cell(c);
  } else {
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (std::size_t w = 0; w < workers; ++w)
      pool.emplace_back([&] {
        for (std::size_t c = next++; c < cells.size(); c = next++) run_cell(c);
      });
    for (auto& t : pool) t.join();
  }
  return rows;
}

// CSV ---------------------------------------------------------------------

inline constexpr const char* kCsvHeader =
    "seed,num_terminals,cutoff_multiplier,cost_function,wpc,nv_nbv,gsc,bvc,"
    "branching_vertex_count,num_vertices,num_edges,avg_suboptimality,runtime_ms,"
    "instance_hash,error";

/// Shortest round-trip decimal, "inf" for infinity; locale independent.
inline std::string format_number(double x) {
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, x);
  return std::string(buf, end);
}

inline double parse_number(std::string_view s) {
  if (s == "inf") return std::numeric_limits<double>::infinity();
  if (s == "-inf") return -std::numeric_limits<double>::infinity();
  double x = 0.0;
  auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), x);
  if (ec != std::errc{} || end != s.data() + s.size())
    throw FormatError("bad number '" + std::string(s) + "'");
  return x;
}

inline std::string csv_quote(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += (c == '\n' || c == '\r') ? ' ' : c;
  }
  return out + "\"";
}

inline std::vector<std::string> csv_split(const std::string& line) {
  std::vector<std::string> fields(1);
  bool quoted = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (quoted) {
      if (c == '"' && i + 1 < line.size() && line[i + 1] == '"') {
        fields.back() += '"';
        ++i;
      } else if (c == '"') {
        quoted = false;
      } else {
        fields.back() += c;
      }
    } else if (c == '"') {
      quoted = true;
    } else if (c == ',') {
      fields.emplace_back();
    } else {
      fields.back() += c;
    }
  }
  return fields;
}

inline void write_csv(std::ostream& out, const std::vector<ResultRow>& rows) {
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.seed << ',' << r.num_terminals << ',' << format_number(r.cutoff_multiplier) << ','
        << to_string(r.cost_function) << ',' << format_number(r.wpc) << ','
        << format_number(r.nv_nbv) << ',' << format_number(r.gsc) << ',' << format_number(r.bvc)
        << ',' << r.branching_vertex_count << ',' << r.num_vertices << ',' << r.num_edges << ','
        << format_number(r.avg_suboptimality) << ',' << format_number(r.runtime_ms) << ','
        << r.instance_hash << ',' << csv_quote(r.error) << '\n';
  }
}

inline std::vector<ResultRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw FormatError("unexpected CSV header");
  std::vector<ResultRow> rows;
  auto to_size = [](const std::string& s) {
    std::size_t v = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size()) throw FormatError("bad integer '" + s + "'");
    return v;
  };
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto f = csv_split(line);
    if (f.size() != 15) throw FormatError("expected 15 CSV fields, got " + std::to_string(f.size()));
    ResultRow r;
    r.seed = to_size(f[0]);
    r.num_terminals = static_cast<int>(to_size(f[1]));
    r.cutoff_multiplier = parse_number(f[2]);
    r.cost_function = parse_cost_function(f[3]);
    r.wpc = parse_number(f[4]);
    r.nv_nbv = parse_number(f[5]);
    r.gsc = parse_number(f[6]);
    r.bvc = parse_number(f[7]);
    r.branching_vertex_count = to_size(f[8]);
    r.num_vertices = to_size(f[9]);
    r.num_edges = to_size(f[10]);
    r.avg_suboptimality = parse_number(f[11]);
    r.runtime_ms = parse_number(f[12]);
    r.instance_hash = f[13];
    r.error = f[14];
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace navmin

#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "entrosort/core.hpp"
#include "entrosort/streams.hpp"

namespace entrosort {

// Engine choices visible on the command line; `splay` is the baseline.
enum class EngineChoice { rebuild, implicit, batched, splay };

std::string_view to_string(EngineChoice choice);
EngineChoice parse_engine_choice(std::string_view text);

struct RunReport {
  std::uint64_t n = 0;
  std::uint64_t sigma = 0;
  double entropy_bits = 0;
  double log_multinomial_bits = 0;
  Mode mode = Mode::ternary;
  EngineChoice engine = EngineChoice::implicit;
  std::uint64_t comparisons_total = 0;
  double bound_total = 0;
  bool bound_satisfied = false;
  std::uint64_t per_step_violations = 0;
  bool stable = false;
  double wall_ms = 0;
  std::uint64_t rebuilds = 0;

  bool ok() const { return bound_satisfied && per_step_violations == 0 && stable; }
};

struct DuelReport {
  RunReport run;
  std::uint64_t sigma = 0;
  std::uint64_t per_step_floor = 0;
  bool floor_satisfied = false;
  std::uint64_t min_middle_cost = 0;
  std::uint64_t middle_total = 0;
  std::uint64_t middle_floor_total = 0;
  double entropy_reference = 0;

  bool ok() const { return floor_satisfied && run.stable; }
};

struct RunOptions {
  // Wall-clock timing makes reports differ run to run; off by default.
  bool timing = false;
};

struct RunOutcome {
  RunReport report;
  SortResult result;
};

// Runs one engine over `keys` and checks totals, per-step ceilings
// (rebuild and implicit only) and stability.
RunOutcome run_sort(std::span<const Key> keys, Mode mode, EngineChoice engine,
                    RunOptions options = {});

struct DuelOutcome {
  DuelReport report;
  std::vector<Item> stream;
  SortResult result;
};

DuelOutcome run_duel(EngineChoice target, Mode mode, std::uint64_t n, RunOptions options = {});

nlohmann::ordered_json to_json(const RunReport& report);
nlohmann::ordered_json to_json(const DuelReport& report);

// Fixed column order.
std::string run_report_csv_header();
std::string to_csv_row(const RunReport& report);

struct BenchGrid {
  std::vector<std::uint64_t> ns;
  std::vector<std::uint64_t> sigmas;
  std::vector<Dist> dists;
  std::vector<Mode> modes;
  std::vector<EngineChoice> engines;
  std::uint64_t seed = 1;
  double zipf_s = 1.0;
};

struct BenchRow {
  std::uint64_t n = 0;
  std::uint64_t sigma = 0;
  Dist dist = Dist::uniform;
  Mode mode = Mode::ternary;
  EngineChoice engine = EngineChoice::implicit;
  double entropy_bits = 0;
  std::uint64_t comparisons_total = 0;
  double comparisons_per_element = 0;
  // Per-element comparisons minus H+1 (ternary) or H+2 (binary).
  double gap = 0;
  bool ok = false;
};

// Cells with an impossible combination (batched ternary, splay binary,
// sigma > n) are skipped.
std::vector<BenchRow> run_bench(const BenchGrid& grid);
std::string bench_csv_header();
std::string to_csv_row(const BenchRow& row);

// Stream for one bench cell: seed mixed with the cell's n and sigma.
std::vector<Key> bench_stream(Dist dist, std::uint64_t n, std::uint64_t sigma, std::uint64_t seed,
                              double zipf_s);

}  // namespace entrosort

#include "entrosort/commands.hpp"

#include <chrono>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "entrosort/adversary.hpp"
#include "entrosort/analysis.hpp"
#include "entrosort/sorter.hpp"
#include "entrosort/splay_sorter.hpp"

namespace entrosort {

std::string_view to_string(EngineChoice choice) {
  switch (choice) {
    case EngineChoice::rebuild: return "rebuild";
    case EngineChoice::implicit: return "implicit";
    case EngineChoice::batched: return "batched";
    case EngineChoice::splay: return "splay";
  }
  return "?";
}

EngineChoice parse_engine_choice(std::string_view text) {
  if (text == "rebuild" || text == "rebuild-each") return EngineChoice::rebuild;
  if (text == "implicit") return EngineChoice::implicit;
  if (text == "batched") return EngineChoice::batched;
  if (text == "splay") return EngineChoice::splay;
  throw std::invalid_argument("unknown engine: " + std::string(text));
}

namespace {

Engine engine_of(EngineChoice choice) {
  switch (choice) {
    case EngineChoice::rebuild: return Engine::rebuild_each;
    case EngineChoice::implicit: return Engine::implicit;
    case EngineChoice::batched: return Engine::batched;
    case EngineChoice::splay: break;
  }
  throw std::invalid_argument("splay is not a tree engine");
}

void require_supported(Mode mode, EngineChoice engine) {
  if (engine == EngineChoice::splay && mode != Mode::ternary) {
    throw std::invalid_argument("splay baseline runs in ternary mode only");
  }
  if (engine == EngineChoice::batched && mode != Mode::binary) {
    throw std::invalid_argument("batched engine supports binary mode only");
  }
}

template <class S>
SortResult feed(S& sorter, std::span<const Item> items) {
  for (const auto& item : items) sorter.process(item);
  return sorter.finalize();
}

void fill_checks(RunReport& r, const StreamStats& stats, const SortResult& result,
                 std::span<const Item> items) {
  r.n = stats.n;
  r.sigma = stats.sigma;
  r.entropy_bits = stats.entropy_bits;
  r.log_multinomial_bits = stats.log_multinomial_bits;
  r.comparisons_total = result.transcript.total_comparisons();
  r.bound_total = r.engine == EngineChoice::splay ? splay_regression_bound(stats)
                                                  : bound_total(stats, r.mode, engine_of(r.engine));
  r.bound_satisfied = static_cast<double>(r.comparisons_total) <= r.bound_total + guard_bits();
  const bool per_step_applies =
      r.engine == EngineChoice::rebuild || r.engine == EngineChoice::implicit;
  r.per_step_violations = per_step_applies ? per_step_violations(result.transcript) : 0;
  r.stable = verify_stable(items, result.items) == StabilityVerdict::stable;
}

}  // namespace

RunOutcome run_sort(std::span<const Key> keys, Mode mode, EngineChoice engine, RunOptions options) {
  require_supported(mode, engine);
  const auto items = make_items(keys);
  RunOutcome out;
  out.report.mode = mode;
  out.report.engine = engine;

  const auto start = std::chrono::steady_clock::now();
  if (engine == EngineChoice::splay) {
    SplaySorter sorter;
    out.result = feed(sorter, items);
  } else {
    Sorter sorter(mode, engine_of(engine));
    out.result = feed(sorter, items);
    out.report.rebuilds = sorter.rebuild_count();
  }
  const auto stop = std::chrono::steady_clock::now();
  if (options.timing) {
    out.report.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  }

  fill_checks(out.report, StreamStats::from_keys(keys), out.result, items);
  return out;
}

DuelOutcome run_duel(EngineChoice target, Mode mode, std::uint64_t n, RunOptions options) {
  require_supported(mode, target);
  DuelOutcome out;
  const auto start = std::chrono::steady_clock::now();
  AdversaryRun run;
  if (target == EngineChoice::splay) {
    run = adversary_run([] { return SplaySorter{}; }, n, mode);
  } else {
    const Engine engine = engine_of(target);
    run = adversary_run([&] { return Sorter(mode, engine); }, n, mode);
  }
  const auto stop = std::chrono::steady_clock::now();

  RunReport& r = out.report.run;
  r.mode = mode;
  r.engine = target;
  if (options.timing) r.wall_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  fill_checks(r, StreamStats::from_items(run.stream), run.result, run.stream);

  const LowerBoundReport lb = lower_bound_check(run.result.transcript, run.plan.sigma, mode);
  out.report.sigma = lb.sigma;
  out.report.per_step_floor = lb.per_step_floor;
  out.report.floor_satisfied = lb.floor_satisfied;
  out.report.min_middle_cost = lb.min_middle_cost;
  out.report.middle_total = lb.middle_total;
  out.report.middle_floor_total = lb.middle_floor_total;
  out.report.entropy_reference = lb.entropy_reference;
  out.stream = std::move(run.stream);
  out.result = std::move(run.result);
  return out;
}

nlohmann::ordered_json to_json(const RunReport& r) {
  nlohmann::ordered_json j;
  j["n"] = r.n;
  j["sigma"] = r.sigma;
  j["entropy_bits"] = r.entropy_bits;
  j["log_multinomial_bits"] = r.log_multinomial_bits;
  j["mode"] = std::string(to_string(r.mode));
  j["engine"] = std::string(to_string(r.engine));
  j["comparisons_total"] = r.comparisons_total;
  j["bound_total"] = r.bound_total;
  j["bound_satisfied"] = r.bound_satisfied;
  j["per_step_violations"] = r.per_step_violations;
  j["stable"] = r.stable;
  j["wall_ms"] = r.wall_ms;
  if (r.engine == EngineChoice::batched) j["rebuilds"] = r.rebuilds;
  return j;
}

nlohmann::ordered_json to_json(const DuelReport& d) {
  auto j = to_json(d.run);
  j["per_step_floor"] = d.per_step_floor;
  j["floor_satisfied"] = d.floor_satisfied;
  j["min_middle_cost"] = d.min_middle_cost;
  j["middle_total"] = d.middle_total;
  j["middle_floor_total"] = d.middle_floor_total;
  j["entropy_reference"] = d.entropy_reference;
  return j;
}

namespace {

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

}  // namespace

std::string run_report_csv_header() {
  return "n,sigma,entropy_bits,log_multinomial_bits,mode,engine,comparisons_total,bound_total,"
         "bound_satisfied,per_step_violations,stable,wall_ms";
}

std::string to_csv_row(const RunReport& r) {
  std::ostringstream out;
  out << r.n << ',' << r.sigma << ',' << fmt_double(r.entropy_bits) << ','
      << fmt_double(r.log_multinomial_bits) << ',' << to_string(r.mode) << ',' << to_string(r.engine)
      << ',' << r.comparisons_total << ',' << fmt_double(r.bound_total) << ','
      << (r.bound_satisfied ? "true" : "false") << ',' << r.per_step_violations << ','
      << (r.stable ? "true" : "false") << ',' << fmt_double(r.wall_ms);
  return out.str();
}

std::vector<Key> bench_stream(Dist dist, std::uint64_t n, std::uint64_t sigma, std::uint64_t seed,
                              double zipf_s) {
  StreamSpec spec;
  spec.dist = dist;
  spec.n = n;
  spec.sigma = dist == Dist::equal ? 1 : sigma;
  spec.seed = seed ^ (n * 0x9e3779b97f4a7c15ULL) ^ (sigma << 32);
  spec.zipf_s = zipf_s;
  return generate_stream(spec);
}

std::vector<BenchRow> run_bench(const BenchGrid& grid) {
  std::vector<BenchRow> rows;
  for (auto n : grid.ns) {
    for (auto sigma : grid.sigmas) {
      for (auto dist : grid.dists) {
        if (dist == Dist::adversarial) throw std::invalid_argument("bench does not take adversarial streams");
        // The equal stream ignores sigma; emit it once.
        if (dist == Dist::equal && sigma != grid.sigmas.front()) continue;
        const std::uint64_t cell_sigma = dist == Dist::equal ? 1 : sigma;
        if (cell_sigma > n) continue;
        const auto keys = bench_stream(dist, n, cell_sigma, grid.seed, grid.zipf_s);
        for (auto mode : grid.modes) {
          for (auto engine : grid.engines) {
            if ((engine == EngineChoice::splay && mode != Mode::ternary) ||
                (engine == EngineChoice::batched && mode != Mode::binary)) {
              continue;
            }
            const auto outcome = run_sort(keys, mode, engine);
            BenchRow row;
            row.n = n;
            row.sigma = outcome.report.sigma;
            row.dist = dist;
            row.mode = mode;
            row.engine = engine;
            row.entropy_bits = outcome.report.entropy_bits;
            row.comparisons_total = outcome.report.comparisons_total;
            row.comparisons_per_element =
                n == 0 ? 0.0 : static_cast<double>(row.comparisons_total) / static_cast<double>(n);
            row.gap = row.comparisons_per_element -
                      (row.entropy_bits + (mode == Mode::ternary ? 1.0 : 2.0));
            row.ok = outcome.report.ok();
            rows.push_back(row);
          }
        }
      }
    }
  }
  return rows;
}

std::string bench_csv_header() {
  return "n,sigma,dist,mode,engine,H,comparisons_total,comparisons_per_element,H_plus_1_gap";
}

std::string to_csv_row(const BenchRow& row) {
  std::ostringstream out;
  out << row.n << ',' << row.sigma << ',' << to_string(row.dist) << ',' << to_string(row.mode) << ','
      << to_string(row.engine) << ',' << fmt_double(row.entropy_bits) << ',' << row.comparisons_total
      << ',' << fmt_double(row.comparisons_per_element) << ',' << fmt_double(row.gap);
  return out.str();
}

}  // namespace entrosort

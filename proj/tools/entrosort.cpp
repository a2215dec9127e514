// entrosort: generate streams, run the online sorters, duel them against
// the lower-bound adversary, and run the invariant suites.
//
// Exit status: 0 success, 1 bound/invariant failure, 2 usage or parse error.

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"

#include "entrosort/adversary.hpp"
#include "entrosort/commands.hpp"
#include "entrosort/streams.hpp"
#include "entrosort/verify.hpp"

namespace {

using namespace entrosort;

constexpr int kExitFailure = 1;
constexpr int kExitUsage = 2;

template <class T, class Parse>
std::vector<T> parse_list(const std::string& text, Parse parse) {
  std::vector<T> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(parse(item));
  }
  if (out.empty()) throw std::invalid_argument("empty list: '" + text + "'");
  return out;
}

std::uint64_t parse_u64(const std::string& s) {
  std::size_t used = 0;
  // Accept 1e5-style values for convenience.
  const double v = std::stod(s, &used);
  if (used != s.size() || v < 0 || v != static_cast<double>(static_cast<std::uint64_t>(v))) {
    throw std::invalid_argument("not a non-negative integer: '" + s + "'");
  }
  return static_cast<std::uint64_t>(v);
}

// Writes to --out when given, stdout otherwise.
class Sink {
 public:
  explicit Sink(const std::string& path) {
    if (!path.empty()) {
      file_.open(path);
      if (!file_) throw std::invalid_argument("cannot open output file " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

StreamFile load_stream(const std::string& path) {
  if (path.empty() || path == "-") return read_stream(std::cin);
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open input file " + path);
  return read_stream(in);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Instrumented online stable sorting"};
  app.require_subcommand(1);

  std::string dist = "uniform", mode = "ternary", engine = "implicit", target = "implicit";
  std::string in_path, out_path, report = "json", suite, n_text = "1000", sigma_text;
  std::uint64_t seed = 1, trials = 0, max_n = 0;
  double zipf_s = 1.0;
  bool timing = false;

  auto* gen = app.add_subcommand("gen", "Generate a stream file");
  gen->add_option("--dist", dist, "uniform|zipf|equal|runs|adversarial");
  gen->add_option("--n", n_text, "Stream length");
  gen->add_option("--sigma", sigma_text, "Distinct keys");
  gen->add_option("--seed", seed);
  gen->add_option("--zipf-s", zipf_s, "Zipf exponent");
  gen->add_option("--mode", mode, "Mode of the sorter an adversarial stream is built against");
  gen->add_option("--target", target, "Sorter an adversarial stream is built against");
  gen->add_option("--out", out_path);

  auto* sort = app.add_subcommand("sort", "Sort a stream and check the bounds");
  sort->add_option("--in", in_path, "Stream file (default stdin)");
  sort->add_option("--mode", mode, "binary|ternary");
  sort->add_option("--engine", engine, "rebuild|implicit|batched|splay");
  sort->add_option("--report", report, "json|csv");
  sort->add_option("--out", out_path);
  sort->add_flag("--timing", timing, "Fill wall_ms");

  auto* duel = app.add_subcommand("duel", "Run the lower-bound adversary against a sorter");
  duel->add_option("--target", target, "rebuild|implicit|batched|splay");
  duel->add_option("--mode", mode, "binary|ternary");
  duel->add_option("--n", n_text, "Stream length (>= 8)");
  duel->add_option("--report", report, "json|csv");
  duel->add_option("--out", out_path);
  duel->add_flag("--timing", timing, "Fill wall_ms");

  auto* verify = app.add_subcommand("verify", "Run an invariant suite");
  verify->add_option("--suite", suite, "depths|steps|totals|stability|equivalence|robbins")->required();
  verify->add_option("--trials", trials, "Trials (0 = suite default)");
  verify->add_option("--seed", seed);
  verify->add_option("--n", max_n, "Largest stream length (0 = suite default)");

  auto* bench = app.add_subcommand("bench", "Benchmark grid to CSV");
  bench->add_option("--n", n_text, "Comma-separated lengths");
  bench->add_option("--sigma", sigma_text, "Comma-separated distinct counts");
  bench->add_option("--dist", dist, "Comma-separated dists");
  bench->add_option("--mode", mode, "Comma-separated modes");
  bench->add_option("--engine", engine, "Comma-separated engines");
  bench->add_option("--seed", seed);
  bench->add_option("--zipf-s", zipf_s);
  bench->add_option("--out", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*gen) {
      const Dist d = parse_dist(dist);
      const std::uint64_t n = parse_u64(n_text);
      StreamFile file;
      if (d == Dist::adversarial) {
        const auto outcome = run_duel(parse_engine_choice(target), parse_mode(mode), n);
        for (const auto& item : outcome.stream) file.keys.push_back(item.key);
        file.header = StreamHeader{n, outcome.report.sigma, "adversarial", seed};
      } else {
        StreamSpec spec;
        spec.dist = d;
        spec.n = n;
        spec.sigma = sigma_text.empty() ? (d == Dist::equal ? 1 : 0) : parse_u64(sigma_text);
        if (spec.sigma == 0 && n > 0) throw std::invalid_argument("--sigma is required for " + dist);
        spec.seed = seed;
        spec.zipf_s = zipf_s;
        file.keys = generate_stream(spec);
        file.header = StreamHeader{n, n == 0 ? 0 : spec.sigma, dist, seed};
      }
      Sink sink(out_path);
      write_stream(sink.stream(), file);
      return 0;
    }

    if (*sort) {
      const StreamFile file = load_stream(in_path);
      const auto outcome =
          run_sort(file.keys, parse_mode(mode), parse_engine_choice(engine), RunOptions{timing});
      Sink sink(out_path);
      if (report == "csv") {
        sink.stream() << run_report_csv_header() << '\n' << to_csv_row(outcome.report) << '\n';
      } else if (report == "json") {
        sink.stream() << to_json(outcome.report).dump(2) << '\n';
      } else {
        throw std::invalid_argument("unknown report format: " + report);
      }
      return outcome.report.ok() ? 0 : kExitFailure;
    }

    if (*duel) {
      const auto outcome =
          run_duel(parse_engine_choice(target), parse_mode(mode), parse_u64(n_text), RunOptions{timing});
      Sink sink(out_path);
      if (report == "csv") {
        sink.stream() << run_report_csv_header() << ",per_step_floor,floor_satisfied,middle_total\n"
                      << to_csv_row(outcome.report.run) << ',' << outcome.report.per_step_floor << ','
                      << (outcome.report.floor_satisfied ? "true" : "false") << ','
                      << outcome.report.middle_total << '\n';
      } else if (report == "json") {
        sink.stream() << to_json(outcome.report).dump(2) << '\n';
      } else {
        throw std::invalid_argument("unknown report format: " + report);
      }
      return outcome.report.ok() ? 0 : kExitFailure;
    }

    if (*verify) {
      const auto summary = run_verify(suite, VerifyOptions{trials, seed, max_n});
      std::cout << summary.suite << ": " << summary.trials << " trials, " << summary.checks
                << " checks, " << summary.failures << " failures\n";
      for (const auto& m : summary.messages) std::cout << "  " << m << '\n';
      return summary.ok() ? 0 : kExitFailure;
    }

    if (*bench) {
      BenchGrid grid;
      grid.ns = parse_list<std::uint64_t>(n_text, parse_u64);
      grid.sigmas = parse_list<std::uint64_t>(sigma_text.empty() ? "64" : sigma_text, parse_u64);
      grid.dists = parse_list<Dist>(dist, [](const std::string& s) { return parse_dist(s); });
      grid.modes = parse_list<Mode>(mode, [](const std::string& s) { return parse_mode(s); });
      grid.engines =
          parse_list<EngineChoice>(engine, [](const std::string& s) { return parse_engine_choice(s); });
      grid.seed = seed;
      grid.zipf_s = zipf_s;
      const auto rows = run_bench(grid);
      Sink sink(out_path);
      sink.stream() << bench_csv_header() << '\n';
      bool ok = true;
      for (const auto& row : rows) {
        sink.stream() << to_csv_row(row) << '\n';
        ok = ok && row.ok;
      }
      return ok ? 0 : kExitFailure;
    }
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

#include "doctest.h"

#include <cmath>
#include <map>

#include "entrosort/adversary.hpp"
#include "entrosort/analysis.hpp"
#include "entrosort/sorter.hpp"
#include "entrosort/splay_sorter.hpp"

using namespace entrosort;

namespace {

// Oracle: sigma = 2^floor(log2(n / log2 n)) + 1 by direct search.
std::uint64_t oracle_sigma(std::uint64_t n) {
  const double ratio = static_cast<double>(n) / std::log2(static_cast<double>(n));
  std::uint64_t p = 1;
  while (static_cast<double>(2 * p) <= ratio) p *= 2;
  return p + 1;
}

// Charges each key a fixed cost; records what it was fed.
struct ScriptedSorter {
  std::map<std::int64_t, std::uint64_t> costs;
  std::vector<Key> fed;

  StepReport process(const Item& item) {
    fed.push_back(item.key);
    return StepReport{item.arrival, 0, 0, true, 0, item.key};
  }
  std::uint64_t probe_cost(Key key) const {
    const auto it = costs.find(key.value);
    return it == costs.end() ? 0 : it->second;
  }
  SortResult finalize() const { return {}; }
};

}  // namespace

TEST_CASE("choose_sigma examples") {
  CHECK(choose_sigma(1024) == 65);
  CHECK(choose_sigma(4096) == 257);
  CHECK(choose_sigma(8) == 3);
  CHECK_THROWS_AS(choose_sigma(7), std::invalid_argument);
  for (std::uint64_t n = 8; n <= 100000; n += 1 + n / 7) CHECK(choose_sigma(n) == oracle_sigma(n));
}

TEST_CASE("per-step floor") {
  CHECK(per_step_floor(65, Mode::ternary) == 7);
  CHECK(per_step_floor(65, Mode::binary) == 8);
  CHECK(per_step_floor(257, Mode::ternary) == 9);
  CHECK(per_step_floor(3, Mode::ternary) == 2);
  CHECK(per_step_floor(34, Mode::ternary) == 7);  // ceil(log2 33) = 6
}

TEST_CASE("plan reserves the top key") {
  const auto plan = make_plan(1024, Mode::binary);
  CHECK(plan.sigma == 65);
  CHECK(plan.reserved_key == Key{65});
  REQUIRE(plan.pool.size() == 64);
  CHECK(plan.pool.front() == Key{1});
  CHECK(plan.pool.back() == Key{64});
}

TEST_CASE("adversary feeds pool, then the costliest key, then the reserved key") {
  const auto run = adversary_run(
      [] {
        ScriptedSorter s;
        s.costs = {{2, 5}, {5, 5}, {3, 4}};
        return s;
      },
      64, Mode::ternary);
  // sigma for n = 64 is 2^3 + 1 = 9.
  REQUIRE(run.plan.sigma == 9);
  REQUIRE(run.stream.size() == 64);
  for (std::int64_t k = 1; k <= 8; ++k) CHECK(run.stream[static_cast<std::size_t>(k - 1)].key == Key{k});
  // Ties go to the smallest key.
  for (std::size_t p = 8; p < 63; ++p) CHECK(run.stream[p].key == Key{2});
  CHECK(run.stream.back().key == Key{9});
  for (std::size_t p = 0; p < run.stream.size(); ++p) CHECK(run.stream[p].arrival == p + 1);
}

TEST_CASE("lower_bound_check on a real duel") {
  const auto run = adversary_run([] { return Sorter(Mode::ternary, Engine::implicit); }, 1024, Mode::ternary);
  const auto report = lower_bound_check(run.result.transcript, 65, Mode::ternary);
  CHECK(report.per_step_floor == 7);
  CHECK(report.floor_satisfied);
  CHECK(report.min_middle_cost >= 7);
  CHECK(report.middle_floor_total == 7 * (1024 - 65));
  CHECK(report.middle_total >= report.middle_floor_total);
  CHECK_THROWS_AS(lower_bound_check(run.result.transcript, 33, Mode::ternary), std::invalid_argument);

  // Frequencies recovered from the transcript match the stream.
  std::map<Key, std::uint64_t> counts;
  for (const auto& item : run.stream) ++counts[item.key];
  std::vector<std::uint64_t> freqs;
  for (const auto& [k, c] : counts) freqs.push_back(c);
  CHECK(report.entropy_bits == doctest::Approx(entropy(freqs)));
}

TEST_CASE("lower_bound_check flags cheap middle steps") {
  Transcript t;
  t.mode = Mode::ternary;
  // sigma = 3: keys 1, 2 first, then two middle steps, then key 3.
  t.steps = {{1, 0, 0, 0, true}, {2, 1, 0, 1, true}, {3, 2, 1, 2, false},
             {4, 1, 1, 2, false}, {5, 2, 0, 2, true}};
  const auto report = lower_bound_check(t, 3, Mode::ternary);
  CHECK(report.per_step_floor == 2);
  CHECK(report.violating_steps == 1);
  CHECK_FALSE(report.floor_satisfied);
  CHECK(report.min_middle_cost == 1);
  CHECK(report.middle_total == 3);
}

TEST_CASE("the splay baseline also pays the floor") {
  const auto run = adversary_run([] { return SplaySorter{}; }, 1024, Mode::ternary);
  CHECK(lower_bound_check(run.result.transcript, 65, Mode::ternary).floor_satisfied);
}

TEST_CASE("the floor holds against every engine in both modes") {
  for (std::uint64_t n : {64ULL, 256ULL, 1024ULL, 4096ULL}) {
    for (auto mode : {Mode::binary, Mode::ternary}) {
      for (auto engine : {Engine::rebuild_each, Engine::implicit}) {
        if (engine == Engine::rebuild_each && n == 4096) continue;  // covered by implicit; same trees
        const auto run = adversary_run([&] { return Sorter(mode, engine); }, n, mode);
        const auto report = lower_bound_check(run.result.transcript, choose_sigma(n), mode);
        CHECK_MESSAGE(report.floor_satisfied, "n=" << n << " mode=" << to_string(mode)
                                                   << " engine=" << to_string(engine));
      }
    }
  }
}

#pragma once

#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "entrosort/core.hpp"
#include "entrosort/sorter.hpp"

namespace entrosort {

// Anything the adversary can duel: processes items online and reports,
// without side effects, what the next element would cost.
template <class S>
concept ProbeableSorter = requires(S s, const S cs, const Item& item, Key key) {
  { s.process(item) } -> std::same_as<StepReport>;
  { cs.probe_cost(key) } -> std::convertible_to<std::uint64_t>;
  { cs.finalize() } -> std::same_as<SortResult>;
};

struct AdversaryPlan {
  std::uint64_t n = 0;
  std::uint64_t sigma = 0;
  Mode mode = Mode::ternary;
  Key reserved_key;
  std::vector<Key> pool;
};

// 2^floor(log2(n / log2 n)) + 1. Requires n >= 8.
std::uint64_t choose_sigma(std::uint64_t n);

AdversaryPlan make_plan(std::uint64_t n, Mode mode);

// ceil(log2(sigma - 1)) + 1 for ternary, + 2 for binary.
std::uint64_t per_step_floor(std::uint64_t sigma, Mode mode);

template <ProbeableSorter S>
std::uint64_t probe_cost(const S& sorter, Key candidate) {
  return sorter.probe_cost(candidate);
}

struct AdversaryRun {
  AdversaryPlan plan;
  std::vector<Item> stream;
  SortResult result;
};

// Presents keys 1..sigma-1 once each, then the currently most expensive
// seen key (ties to the smallest) until step n-1, then the reserved key.
template <class Factory>
  requires ProbeableSorter<std::invoke_result_t<Factory&>>
AdversaryRun adversary_run(Factory&& make_sorter, std::uint64_t n, Mode mode) {
  AdversaryRun run;
  run.plan = make_plan(n, mode);
  auto sorter = make_sorter();
  run.stream.reserve(n);
  auto feed = [&](Key key) {
    const Item item{key, run.stream.size() + 1};
    run.stream.push_back(item);
    sorter.process(item);
  };

  for (Key key : run.plan.pool) feed(key);
  while (run.stream.size() + 1 < n) {
    Key best = run.plan.pool.front();
    std::uint64_t best_cost = 0;
    for (Key key : run.plan.pool) {
      const std::uint64_t cost = probe_cost(sorter, key);
      if (cost > best_cost) {
        best_cost = cost;
        best = key;
      }
    }
    feed(best);
  }
  feed(run.plan.reserved_key);
  run.result = sorter.finalize();
  return run;
}

struct LowerBoundReport {
  std::uint64_t sigma = 0;
  std::uint64_t per_step_floor = 0;
  bool floor_satisfied = false;
  std::uint64_t violating_steps = 0;
  std::uint64_t min_middle_cost = 0;
  // Steps sigma..n-1.
  std::uint64_t middle_total = 0;
  std::uint64_t middle_floor_total = 0;
  double entropy_bits = 0;
  // (H+1)(n-sigma) ternary, (H+2)(n-sigma) binary.
  double entropy_reference = 0;
};

// Throws std::invalid_argument when the transcript does not have the
// shape of an adversary run for `sigma`.
LowerBoundReport lower_bound_check(const Transcript& transcript, std::uint64_t sigma, Mode mode);

}  // namespace entrosort

#include "entrosort/adversary.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "entrosort/analysis.hpp"

namespace entrosort {

std::uint64_t choose_sigma(std::uint64_t n) {
  if (n < 8) throw std::invalid_argument("adversary needs n >= 8, got " + std::to_string(n));
  const long double ratio = static_cast<long double>(n) / std::log2(static_cast<long double>(n));
  // Largest e with 2^e <= ratio.
  std::uint64_t e = 0;
  while (std::ldexp(1.0L, static_cast<int>(e + 1)) <= ratio) ++e;
  return (std::uint64_t{1} << e) + 1;
}

AdversaryPlan make_plan(std::uint64_t n, Mode mode) {
  AdversaryPlan plan;
  plan.n = n;
  plan.sigma = choose_sigma(n);
  plan.mode = mode;
  plan.reserved_key = Key{static_cast<std::int64_t>(plan.sigma)};
  for (std::uint64_t k = 1; k < plan.sigma; ++k) plan.pool.push_back(Key{static_cast<std::int64_t>(k)});
  return plan;
}

std::uint64_t per_step_floor(std::uint64_t sigma, Mode mode) {
  if (sigma < 2) throw std::invalid_argument("per_step_floor: sigma must be at least 2");
  const std::uint64_t ceil_log = std::bit_width(sigma - 2);  // ceil(log2(sigma - 1))
  return ceil_log + (mode == Mode::ternary ? 1 : 2);
}

LowerBoundReport lower_bound_check(const Transcript& transcript, std::uint64_t sigma, Mode mode) {
  const auto& steps = transcript.steps;
  const std::uint64_t n = steps.size();
  if (sigma < 2 || n <= sigma) {
    throw std::invalid_argument("lower_bound_check: sigma mismatch (sigma " + std::to_string(sigma) +
                                ", n " + std::to_string(n) + ")");
  }
  if (steps[sigma - 1].distinct_before != sigma - 1 || steps[n - 1].distinct_before != sigma - 1 ||
      !steps[n - 1].is_new) {
    throw std::invalid_argument("lower_bound_check: sigma mismatch with transcript");
  }

  LowerBoundReport report;
  report.sigma = sigma;
  report.per_step_floor = per_step_floor(sigma, mode);
  report.min_middle_cost = UINT64_MAX;
  for (std::uint64_t i = sigma; i <= n - 1; ++i) {
    const std::uint64_t cost = steps[i - 1].comparisons;
    report.middle_total += cost;
    report.min_middle_cost = std::min(report.min_middle_cost, cost);
    if (cost < report.per_step_floor) ++report.violating_steps;
  }
  report.middle_floor_total = report.per_step_floor * (n - sigma);
  report.floor_satisfied = report.violating_steps == 0;

  // A key's occ_before values run 0..c-1, so the number of steps with
  // occ_before == j is the number of keys with frequency > j.
  std::vector<std::uint64_t> freqs;
  {
    std::vector<std::uint64_t> at_least;
    for (const auto& s : steps) {
      if (s.occ_before >= at_least.size()) at_least.resize(s.occ_before + 1, 0);
      ++at_least[s.occ_before];
    }
    for (std::size_t j = 0; j < at_least.size(); ++j) {
      const std::uint64_t next = j + 1 < at_least.size() ? at_least[j + 1] : 0;
      for (std::uint64_t c = 0; c < at_least[j] - next; ++c) freqs.push_back(j + 1);
    }
  }
  report.entropy_bits = entropy(freqs);
  report.entropy_reference = (report.entropy_bits + (mode == Mode::ternary ? 1.0 : 2.0)) *
                             static_cast<double>(n - sigma);
  return report;
}

}  // namespace entrosort

#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "entrosort/core.hpp"
#include "entrosort/sorter.hpp"

namespace entrosort {

struct StreamStats {
  std::uint64_t n = 0;
  std::uint64_t sigma = 0;
  std::vector<std::uint64_t> freqs;
  double entropy_bits = 0.0;
  double log_multinomial_bits = 0.0;

  static StreamStats from_freqs(std::vector<std::uint64_t> freqs);
  static StreamStats from_keys(std::span<const Key> keys);
  static StreamStats from_items(std::span<const Item> items);
};

// H = sum_i (c_i / n) log2(n / c_i).
double entropy(std::span<const std::uint64_t> freqs);

// log2(n! / prod c_i!), from cumulative sums of log2 of integers.
double log_multinomial(std::span<const std::uint64_t> freqs);

long double log2_factorial(std::uint64_t x);

struct RobbinsBounds {
  long double lower = 0;
  long double upper = 0;
};

// log2 of sqrt(2 pi) x^(x+1/2) e^(-x + 1/(12x+1)) and of the same with
// 1/(12x); they bracket log2(x!) strictly for x >= 1. x = 0 gives (0, 0).
RobbinsBounds robbins_bounds(std::uint64_t x);

struct Sandwich {
  bool lower_ok = false;
  bool upper_ok = false;
  double log_multinomial_bits = 0;
  double lower_limit = 0;
  double upper_limit = 0;
};

// Checks
//   logM <= nH + 2 log2(n+1) + 4
//   logM >= nH - sigma (log2(n/sigma + 1) + 4).
// Both follow from robbins_bounds: the n! and c_i! terms cancel down to
// 1/2 log2(2 pi n) - sum 1/2 log2(2 pi c_i) plus correction terms below
// log2(e)/12 each, and concavity of log bounds the sum by
// sigma/2 log2(2 pi n / sigma).
Sandwich multinomial_sandwich(std::span<const std::uint64_t> freqs);

// Constant C in the batched total bound logM + 2n + C sigma^2 log2 n.
// Per key, at most sigma steps fall into overflow before the next rebuild
// picks it up, each costing at most log2 n + 2 tree comparisons plus
// 2 (1.45 log2(sigma+2) + 1) for the overflow search; replaying stale
// counts costs a further (sigma+1) log2 n per key. With sigma <= n that
// sums to under 6 sigma^2 log2 n for sigma >= 2; 8 leaves room for
// sigma = 1 and small n.
inline constexpr double batched_bound_constant = 8.0;

// Total-comparison bound for a finished run:
//   binary  : logM + 2n + sigma (log2 n + 3)
//   ternary : logM + n + sigma (log2 n + 2)
//   batched : logM + 2n + C sigma^2 log2 n
double bound_total(const StreamStats& stats, Mode mode, Engine engine);

// Regression ceiling for splay-sort, 3 (H+1) n + 4 sigma log2(n+1) + 4.
// Measured, not a theorem: the worst observed ratio to (H+1) n is about
// 1.07 (uniform, sigma = 256).
double splay_regression_bound(const StreamStats& stats);

// Absolute slack added before declaring a bound violated. Defaults to
// 1e-6 bits; ENTROSORT_GUARD_BITS overrides it.
double guard_bits();

// Count of steps breaking the per-step ceilings
//   binary : seen <= log2((i-1)/occ) + 2, new <= log2(i-1) + 3
//   ternary: seen <= log2((i-1)/occ) + 1, new <= log2(i-1) + 1
// plus any comparisons spent on step 1.
std::uint64_t per_step_violations(const Transcript& transcript);

}  // namespace entrosort

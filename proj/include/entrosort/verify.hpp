#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "entrosort/core.hpp"
#include "entrosort/streams.hpp"
#include "entrosort/trees.hpp"

namespace entrosort {

struct VerifyOptions {
  std::uint64_t trials = 0;  // 0 picks the suite default
  std::uint64_t seed = 1;
  std::uint64_t max_n = 0;   // 0 picks the suite default
};

struct VerifySummary {
  std::string suite;
  std::uint64_t trials = 0;
  std::uint64_t checks = 0;
  std::uint64_t failures = 0;
  // First few failure descriptions.
  std::vector<std::string> messages;

  bool ok() const { return failures == 0; }
};

// Suites: depths, steps, totals, stability, equivalence, robbins.
VerifySummary run_verify(std::string_view suite, VerifyOptions options);

const std::vector<std::string>& verify_suites();

// Depth guarantees of both tree constructions for one distribution.
struct TreeDepthCheck {
  // Node i deeper than log2(total / w_i).
  std::uint64_t mehlhorn_failures = 0;
  // Even leaf i deeper than ceil(log2(total / w_i)) + 1, not excused.
  std::uint64_t gm_even_failures = 0;
  // Rightmost even leaf exactly one deeper, with p_k / 2 dyadic.
  std::uint64_t gm_dyadic_exceptions = 0;
  // Odd leaf deeper than ceil(log2(1 / p_min)) + 2.
  std::uint64_t gm_odd_failures = 0;
  // Prefix collisions, leaf-order or in-order mismatches.
  std::uint64_t structure_failures = 0;

  std::uint64_t failures() const {
    return mehlhorn_failures + gm_even_failures + gm_odd_failures + structure_failures;
  }
};

TreeDepthCheck check_tree_depths(const WeightDist& dist);

// Random test stream: random dist among uniform/zipf/equal/runs, n in
// [1, max_n], sigma in [1, min(n, max_sigma)].
std::vector<Key> random_stream(SplitMix64& rng, std::uint64_t max_n, std::uint64_t max_sigma);

// Random positive weight vector of length 1..max_k, occasionally uniform
// or power-of-two valued to hit dyadic boundaries.
std::vector<std::uint64_t> random_weights(SplitMix64& rng, std::size_t max_k);

}  // namespace entrosort

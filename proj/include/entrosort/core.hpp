#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace entrosort {

// Element identity. Engines never read `value` directly; every
// element-vs-element decision goes through a CountingComparator.
struct Key {
  std::int64_t value = 0;

  friend constexpr auto operator<=>(Key, Key) = default;
};

// S[i]: a key together with its 1-based stream position.
struct Item {
  Key key;
  std::uint64_t arrival = 0;

  friend constexpr bool operator==(const Item&, const Item&) = default;
};

enum class Mode { binary, ternary };

enum class BinaryResult { le, gt };
enum class TernaryResult { lt, eq, gt };

std::string_view to_string(Mode mode);
Mode parse_mode(std::string_view text);

// The only gateway for comparisons between multiset elements. Keeps
// separate binary and ternary tallies plus a running digest of every
// (x, y, outcome) triple so that two engines can be checked for issuing
// the same comparison sequence.
class CountingComparator {
 public:
  BinaryResult compare_binary(Key x, Key y);
  TernaryResult compare_ternary(Key x, Key y);

  // Ternary outcome realised as two binary comparisons (x <= y, y <= x),
  // charged as two binary calls.
  TernaryResult compare_ternary_via_binary(Key x, Key y);

  std::uint64_t binary_count() const { return binary_count_; }
  std::uint64_t ternary_count() const { return ternary_count_; }
  std::uint64_t total() const { return binary_count_ + ternary_count_; }
  std::uint64_t digest() const { return digest_; }

 private:
  void mix(std::uint64_t tag, Key x, Key y, std::uint64_t outcome);

  std::uint64_t binary_count_ = 0;
  std::uint64_t ternary_count_ = 0;
  std::uint64_t digest_ = 0xcbf29ce484222325ULL;
};

struct StepRecord {
  std::uint64_t i = 0;
  std::uint64_t comparisons = 0;
  std::uint64_t occ_before = 0;
  std::uint64_t distinct_before = 0;
  bool is_new = true;

  friend bool operator==(const StepRecord&, const StepRecord&) = default;
};

struct Transcript {
  std::vector<StepRecord> steps;
  Mode mode = Mode::ternary;
  std::string engine;
  // Comparator digest at the end of the run.
  std::uint64_t comparison_digest = 0;

  std::uint64_t n() const { return steps.size(); }
  std::uint64_t total_comparisons() const;

  // Step records plus the comparison digest, one line per step. Two
  // engines realising the same trees produce identical strings.
  std::string serialize_steps() const;
};

// Output of an engine once the stream has been consumed.
struct SortResult {
  std::vector<Item> items;
  Transcript transcript;
};

enum class StabilityVerdict { stable, not_stable, not_a_permutation };

std::string_view to_string(StabilityVerdict verdict);

// Checks `output` against a direct stable sort of `stream` by
// (key, arrival). Independent of every engine.
StabilityVerdict verify_stable(std::span<const Item> stream,
                               std::span<const Item> output);

// Items numbered 1..n in stream order.
std::vector<Item> make_items(std::span<const Key> keys);

}  // namespace entrosort

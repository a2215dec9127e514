#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string_view>
#include <vector>

#include "entrosort/core.hpp"
#include "entrosort/freq_index.hpp"
#include "entrosort/trees.hpp"

namespace entrosort {

enum class Engine { rebuild_each, implicit, batched };

std::string_view to_string(Engine engine);
Engine parse_engine(std::string_view text);

struct StepReport {
  std::uint64_t i = 0;
  std::uint64_t comparisons = 0;
  std::uint64_t occ_before = 0;
  bool is_new = true;
  // Seen: 1-based distinct rank of the key. New: number of distinct keys
  // below it.
  std::size_t rank = 0;
  Key key;

  friend bool operator==(const StepReport&, const StepReport&) = default;
};

// Items grouped by distinct key, each group in arrival order. Group ids
// are creation order; the caller supplies the key order when assembling.
class GroupedOutput {
 public:
  std::size_t open_group(const Item& item) {
    groups_.push_back({item});
    return groups_.size() - 1;
  }
  void append(std::size_t group, const Item& item) { groups_[group].push_back(item); }
  std::vector<Item> assemble(std::span<const std::size_t> order) const;

 private:
  std::vector<std::vector<Item>> groups_;
};

// Where the next element lands: a seen key's rank, or the insertion point
// of a new key. Batched runs also carry the overflow gap.
struct Placement {
  static constexpr std::size_t no_gap = static_cast<std::size_t>(-1);

  bool seen = false;
  std::size_t rank = 0;
  std::size_t gap = no_gap;
  std::size_t gap_rank = 0;
};

// Fenwick tree over overflow gap sizes.
class GapCounts {
 public:
  explicit GapCounts(std::size_t gaps = 0) : tree_(gaps + 1, 0) {}
  void add(std::size_t gap, std::uint64_t delta);
  // Sum over gaps 0..gap-1.
  std::uint64_t prefix(std::size_t gap) const;

 private:
  std::vector<std::uint64_t> tree_;
};

// Frozen tree plus per-gap overflow trees between rebuilds.
struct BatchedState {
  bool built = false;
  LeafTree tree;
  std::vector<Key> tree_keys;
  std::vector<FreqIndex> overflow;
  GapCounts gap_counts;
  std::uint64_t since_rebuild = 0;
  std::uint64_t distinct_at_rebuild = 0;
  std::uint64_t rebuilds = 0;
};

struct SorterState {
  Mode mode = Mode::ternary;
  Engine engine = Engine::implicit;
  FreqIndex freq;
  GroupedOutput output;
  CountingComparator cmp;
  Transcript transcript;
  BatchedState batched;
};

// Online stable sorter. Binary mode descends the leaf-oriented tree over
// the empirical distribution of the prefix, ternary mode the bisection
// node tree. RebuildEach materialises the tree every step, Implicit walks
// the same tree through FreqIndex prefix-sum queries, and Batched (binary
// only) freezes the tree between rebuilds and routes misses to per-gap
// overflow trees.
class Sorter {
 public:
  Sorter(Mode mode, Engine engine);

  StepReport process(const Item& item);

  // Comparisons the next process() would spend on `key`. `key` must have
  // been seen. Leaves the sorter untouched.
  std::uint64_t probe_cost(Key key) const;

  SorterState snapshot() const { return state_; }
  static Sorter restore(SorterState state) { return Sorter(std::move(state)); }

  SortResult finalize() const;
  std::vector<Item> output() const;

  Mode mode() const { return state_.mode; }
  Engine engine() const { return state_.engine; }
  const Transcript& transcript() const { return state_.transcript; }
  const CountingComparator& comparator() const { return state_.cmp; }
  const FreqIndex& frequencies() const { return state_.freq; }
  std::uint64_t steps() const { return state_.transcript.steps.size(); }
  std::uint64_t rebuild_count() const { return state_.batched.rebuilds; }

 private:
  explicit Sorter(SorterState state) : state_(std::move(state)) {}

  Placement place(Key key, CountingComparator& cmp) const;
  void commit(const Placement& where, const Item& item, StepReport& report);
  void rebuild();

  SorterState state_;
};

namespace detail {

// Leaf reached by x in an explicit leaf tree, keys[j-1] being item j.
std::size_t descend_leaf_tree(const LeafTree& tree, std::span<const Key> keys, Key x,
                              CountingComparator& cmp);
// Same descent without materialising the tree.
std::size_t descend_leaf_tree_implicit(const FreqIndex& freq, Key x, CountingComparator& cmp);

Placement descend_node_tree(const NodeTree& tree, std::span<const Key> keys, Key x,
                            CountingComparator& cmp);
Placement descend_node_tree_implicit(const FreqIndex& freq, Key x, CountingComparator& cmp);

}  // namespace detail

}  // namespace entrosort

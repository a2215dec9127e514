#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "entrosort/core.hpp"

namespace entrosort {

// Frequency index over the distinct keys seen so far: an AVL tree in
// key order whose nodes carry a count plus subtree count-sums and subtree
// sizes. It stores the partial sums P_j of the empirical distribution and
// serves as the implicit form of the per-step search trees.
//
// Ranks are 1-based distinct ranks. Every query visits O(log sigma) nodes;
// visits() exposes the running total for the balance tests. The visit
// counter is the only state touched by const queries, so concurrent
// readers must not share an instance.
class FreqIndex {
 public:
  struct Recorded {
    std::uint64_t occ_before = 0;
    // Number of distinct keys strictly less than the recorded key.
    std::size_t rank = 0;
  };

  struct Located {
    bool found = false;
    // 1-based rank when found, otherwise the number of keys less than the
    // probe.
    std::size_t rank = 0;
  };

  // Increments the count of `key`, inserting it if absent. Navigation
  // compares keys directly; it is bookkeeping, not an element comparison.
  Recorded record(Key key);

  // Count increment for the entry at `rank`; returns the previous count.
  std::uint64_t add_at(std::size_t rank);
  // Inserts a new entry with count 1 after the first `less` entries.
  void insert_at(std::size_t less, Key key, std::size_t id);

  std::uint64_t prefix_weight(std::size_t j) const;
  // Rank j with prefix_weight(j-1) <= w < prefix_weight(j).
  std::size_t select_by_cumweight(std::uint64_t w) const;
  Key key_at(std::size_t j) const;
  std::uint64_t count_at(std::size_t j) const;
  std::size_t id_at(std::size_t j) const;

  // Root-to-leaf search driven by `probe(node_key)`, which must return the
  // ordering of the searched element relative to node_key.
  template <class Probe>
  Located locate(Probe&& probe) const;

  // Uncounted lookup by key.
  Located find(Key key) const;

  std::uint64_t total() const { return root_ < 0 ? 0 : at(root_).sum; }
  std::size_t distinct() const { return root_ < 0 ? 0 : at(root_).size; }
  bool empty() const { return root_ < 0; }

  // In-order snapshots.
  std::vector<std::uint64_t> weights() const;
  std::vector<Key> keys() const;
  std::vector<std::size_t> ids() const;

  int height() const { return root_ < 0 ? 0 : at(root_).height; }
  std::uint64_t visits() const { return visits_; }

 private:
  struct Node {
    Key key;
    std::uint64_t count = 0;
    std::size_t id = 0;
    std::uint64_t sum = 0;
    std::size_t size = 0;
    int height = 0;
    int left = -1;
    int right = -1;
  };

  const Node& at(int i) const { return nodes_[static_cast<std::size_t>(i)]; }
  Node& at(int i) { return nodes_[static_cast<std::size_t>(i)]; }
  std::size_t size_of(int i) const { return i < 0 ? 0 : at(i).size; }
  std::uint64_t sum_of(int i) const { return i < 0 ? 0 : at(i).sum; }
  int height_of(int i) const { return i < 0 ? 0 : at(i).height; }

  void pull(int i);
  int rotate_left(int i);
  int rotate_right(int i);
  int rebalance(int i);
  int insert_rec(int i, std::size_t less, int fresh);
  int node_at(std::size_t j) const;
  template <class Fn>
  void in_order(Fn&& fn) const;

  std::vector<Node> nodes_;
  int root_ = -1;
  mutable std::uint64_t visits_ = 0;
};

template <class Probe>
FreqIndex::Located FreqIndex::locate(Probe&& probe) const {
  std::size_t less = 0;
  int cur = root_;
  while (cur >= 0) {
    ++visits_;
    const Node& node = at(cur);
    switch (probe(node.key)) {
      case TernaryResult::eq:
        return Located{true, less + size_of(node.left) + 1};
      case TernaryResult::lt:
        cur = node.left;
        break;
      case TernaryResult::gt:
        less += size_of(node.left) + 1;
        cur = node.right;
        break;
    }
  }
  return Located{false, less};
}

}  // namespace entrosort

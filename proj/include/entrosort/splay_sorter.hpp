#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "entrosort/core.hpp"
#include "entrosort/sorter.hpp"

namespace entrosort {

// Splay-sort: insertion into a bottom-up splay tree over the distinct keys,
// one counted ternary comparison per node on the search path. Repeats of a
// key join that node's group, so a hit at the root costs one comparison.
// Monotone streams cost one comparison per element after the first.
// Ternary only.
class SplaySorter {
 public:
  SplaySorter();

  StepReport process(const Item& item);
  std::uint64_t probe_cost(Key key) const;

  SortResult finalize() const;
  std::vector<Item> output() const;

  const Transcript& transcript() const { return transcript_; }
  const CountingComparator& comparator() const { return cmp_; }
  std::size_t distinct() const { return nodes_.size(); }
  // Depth of the deepest node, for tests.
  int height() const;

 private:
  struct Node {
    Key key;
    std::size_t group = 0;
    std::uint64_t count = 0;
    int left = -1;
    int right = -1;
    int parent = -1;
  };

  struct Search {
    int node = -1;     // match, or the parent of the empty slot
    bool found = false;
    bool go_left = false;
  };

  Search search(Key x, CountingComparator& cmp) const;
  void rotate(int x);
  void splay(int x);

  std::vector<Node> nodes_;
  int root_ = -1;
  GroupedOutput output_;
  CountingComparator cmp_;
  Transcript transcript_;
};

}  // namespace entrosort

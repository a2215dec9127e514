#include "entrosort/splay_sorter.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

namespace entrosort {

SplaySorter::SplaySorter() {
  transcript_.mode = Mode::ternary;
  transcript_.engine = "splay";
}

SplaySorter::Search SplaySorter::search(Key x, CountingComparator& cmp) const {
  Search s;
  int cur = root_;
  while (cur >= 0) {
    s.node = cur;
    const Node& n = nodes_[static_cast<std::size_t>(cur)];
    switch (cmp.compare_ternary(x, n.key)) {
      case TernaryResult::eq:
        s.found = true;
        return s;
      case TernaryResult::lt:
        s.go_left = true;
        cur = n.left;
        break;
      case TernaryResult::gt:
        s.go_left = false;
        cur = n.right;
        break;
    }
  }
  return s;
}

void SplaySorter::rotate(int x) {
  auto at = [this](int i) -> Node& { return nodes_[static_cast<std::size_t>(i)]; };
  const int p = at(x).parent;
  const int g = at(p).parent;
  if (at(p).left == x) {
    at(p).left = at(x).right;
    if (at(x).right >= 0) at(at(x).right).parent = p;
    at(x).right = p;
  } else {
    at(p).right = at(x).left;
    if (at(x).left >= 0) at(at(x).left).parent = p;
    at(x).left = p;
  }
  at(p).parent = x;
  at(x).parent = g;
  if (g < 0) {
    root_ = x;
  } else if (at(g).left == p) {
    at(g).left = x;
  } else {
    at(g).right = x;
  }
}

void SplaySorter::splay(int x) {
  auto at = [this](int i) -> Node& { return nodes_[static_cast<std::size_t>(i)]; };
  while (at(x).parent >= 0) {
    const int p = at(x).parent;
    const int g = at(p).parent;
    if (g >= 0) {
      const bool zig_zig = (at(g).left == p) == (at(p).left == x);
      rotate(zig_zig ? p : x);
    }
    rotate(x);
  }
}

StepReport SplaySorter::process(const Item& item) {
  if (item.arrival != transcript_.steps.size() + 1) {
    throw std::invalid_argument("SplaySorter::process: arrival " +
                                std::to_string(item.arrival) + " out of sequence");
  }
  StepReport report;
  report.i = item.arrival;
  report.key = item.key;
  const std::uint64_t before = cmp_.total();
  const std::size_t distinct_before = nodes_.size();

  const Search s = search(item.key, cmp_);
  int target = s.node;
  if (s.found) {
    Node& n = nodes_[static_cast<std::size_t>(target)];
    report.occ_before = n.count++;
    report.is_new = false;
    output_.append(n.group, item);
  } else {
    target = static_cast<int>(nodes_.size());
    Node fresh;
    fresh.key = item.key;
    fresh.group = output_.open_group(item);
    fresh.count = 1;
    fresh.parent = s.node;
    nodes_.push_back(fresh);
    if (s.node < 0) {
      root_ = target;
    } else if (s.go_left) {
      nodes_[static_cast<std::size_t>(s.node)].left = target;
    } else {
      nodes_[static_cast<std::size_t>(s.node)].right = target;
    }
    report.is_new = true;
  }
  splay(target);
  report.comparisons = cmp_.total() - before;

  transcript_.steps.push_back(StepRecord{report.i, report.comparisons, report.occ_before,
                                         distinct_before, report.is_new});
  transcript_.comparison_digest = cmp_.digest();
  return report;
}

std::uint64_t SplaySorter::probe_cost(Key key) const {
  CountingComparator scratch;
  if (!search(key, scratch).found) {
    throw std::invalid_argument("probe_cost: key " + std::to_string(key.value) + " not seen");
  }
  return scratch.total();
}

std::vector<Item> SplaySorter::output() const {
  std::vector<std::size_t> order;
  order.reserve(nodes_.size());
  std::vector<int> stack;
  int cur = root_;
  while (cur >= 0 || !stack.empty()) {
    while (cur >= 0) {
      stack.push_back(cur);
      cur = nodes_[static_cast<std::size_t>(cur)].left;
    }
    cur = stack.back();
    stack.pop_back();
    order.push_back(nodes_[static_cast<std::size_t>(cur)].group);
    cur = nodes_[static_cast<std::size_t>(cur)].right;
  }
  return output_.assemble(order);
}

SortResult SplaySorter::finalize() const { return SortResult{output(), transcript_}; }

int SplaySorter::height() const {
  int best = 0;
  std::vector<std::pair<int, int>> stack;
  if (root_ >= 0) stack.emplace_back(root_, 0);
  while (!stack.empty()) {
    auto [i, d] = stack.back();
    stack.pop_back();
    best = std::max(best, d);
    const Node& n = nodes_[static_cast<std::size_t>(i)];
    if (n.left >= 0) stack.emplace_back(n.left, d + 1);
    if (n.right >= 0) stack.emplace_back(n.right, d + 1);
  }
  return best;
}

}  // namespace entrosort

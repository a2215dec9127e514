#include "entrosort/freq_index.hpp"

#include <algorithm>
#include <stdexcept>

namespace entrosort {

void FreqIndex::pull(int i) {
  Node& n = at(i);
  n.sum = n.count + sum_of(n.left) + sum_of(n.right);
  n.size = 1 + size_of(n.left) + size_of(n.right);
  n.height = 1 + std::max(height_of(n.left), height_of(n.right));
}

int FreqIndex::rotate_left(int i) {
  const int r = at(i).right;
  at(i).right = at(r).left;
  at(r).left = i;
  pull(i);
  pull(r);
  return r;
}

int FreqIndex::rotate_right(int i) {
  const int l = at(i).left;
  at(i).left = at(l).right;
  at(l).right = i;
  pull(i);
  pull(l);
  return l;
}

int FreqIndex::rebalance(int i) {
  pull(i);
  const int balance = height_of(at(i).left) - height_of(at(i).right);
  if (balance > 1) {
    if (height_of(at(at(i).left).left) < height_of(at(at(i).left).right)) {
      at(i).left = rotate_left(at(i).left);
    }
    return rotate_right(i);
  }
  if (balance < -1) {
    if (height_of(at(at(i).right).right) < height_of(at(at(i).right).left)) {
      at(i).right = rotate_right(at(i).right);
    }
    return rotate_left(i);
  }
  return i;
}

int FreqIndex::insert_rec(int i, std::size_t less, int fresh) {
  if (i < 0) return fresh;
  ++visits_;
  const std::size_t left_size = size_of(at(i).left);
  if (less <= left_size) {
    const int child = insert_rec(at(i).left, less, fresh);
    at(i).left = child;
  } else {
    const int child = insert_rec(at(i).right, less - left_size - 1, fresh);
    at(i).right = child;
  }
  return rebalance(i);
}

void FreqIndex::insert_at(std::size_t less, Key key, std::size_t id) {
  if (less > distinct()) throw std::out_of_range("FreqIndex::insert_at: position out of range");
  const int fresh = static_cast<int>(nodes_.size());
  nodes_.push_back(Node{key, 1, id, 1, 1, 1, -1, -1});
  root_ = insert_rec(root_, less, fresh);
}

std::uint64_t FreqIndex::add_at(std::size_t rank) {
  if (rank == 0 || rank > distinct()) throw std::out_of_range("FreqIndex::add_at: rank out of range");
  // Walk down, bumping subtree sums along the way.
  int cur = root_;
  std::size_t j = rank;
  while (true) {
    ++visits_;
    Node& node = at(cur);
    ++node.sum;
    const std::size_t left_size = size_of(node.left);
    if (j == left_size + 1) return node.count++;
    if (j <= left_size) {
      cur = node.left;
    } else {
      j -= left_size + 1;
      cur = node.right;
    }
  }
}

FreqIndex::Recorded FreqIndex::record(Key key) {
  const Located where = find(key);
  if (where.found) return Recorded{add_at(where.rank), where.rank - 1};
  insert_at(where.rank, key, distinct());
  return Recorded{0, where.rank};
}

FreqIndex::Located FreqIndex::find(Key key) const {
  return locate([key](Key node_key) {
    return key < node_key ? TernaryResult::lt
           : key == node_key ? TernaryResult::eq
                             : TernaryResult::gt;
  });
}

int FreqIndex::node_at(std::size_t j) const {
  if (j == 0 || j > distinct()) throw std::out_of_range("FreqIndex: rank out of range");
  int cur = root_;
  while (true) {
    ++visits_;
    const Node& node = at(cur);
    const std::size_t left_size = size_of(node.left);
    if (j == left_size + 1) return cur;
    if (j <= left_size) {
      cur = node.left;
    } else {
      j -= left_size + 1;
      cur = node.right;
    }
  }
}

std::uint64_t FreqIndex::prefix_weight(std::size_t j) const {
  if (j > distinct()) throw std::out_of_range("FreqIndex::prefix_weight: rank out of range");
  std::uint64_t acc = 0;
  int cur = root_;
  while (cur >= 0 && j > 0) {
    ++visits_;
    const Node& node = at(cur);
    const std::size_t left_size = size_of(node.left);
    if (j <= left_size) {
      cur = node.left;
    } else {
      acc += sum_of(node.left) + node.count;
      j -= left_size + 1;
      cur = node.right;
    }
  }
  return acc;
}

std::size_t FreqIndex::select_by_cumweight(std::uint64_t w) const {
  if (w >= total()) throw std::out_of_range("FreqIndex::select_by_cumweight: weight out of range");
  std::size_t rank = 0;
  int cur = root_;
  while (true) {
    ++visits_;
    const Node& node = at(cur);
    const std::uint64_t left_sum = sum_of(node.left);
    if (w < left_sum) {
      cur = node.left;
    } else if (w < left_sum + node.count) {
      return rank + size_of(node.left) + 1;
    } else {
      w -= left_sum + node.count;
      rank += size_of(node.left) + 1;
      cur = node.right;
    }
  }
}

Key FreqIndex::key_at(std::size_t j) const { return at(node_at(j)).key; }
std::uint64_t FreqIndex::count_at(std::size_t j) const { return at(node_at(j)).count; }
std::size_t FreqIndex::id_at(std::size_t j) const { return at(node_at(j)).id; }

template <class Fn>
void FreqIndex::in_order(Fn&& fn) const {
  std::vector<int> stack;
  int cur = root_;
  while (cur >= 0 || !stack.empty()) {
    while (cur >= 0) {
      stack.push_back(cur);
      cur = at(cur).left;
    }
    cur = stack.back();
    stack.pop_back();
    fn(at(cur));
    cur = at(cur).right;
  }
}

std::vector<std::uint64_t> FreqIndex::weights() const {
  std::vector<std::uint64_t> out;
  out.reserve(distinct());
  in_order([&](const Node& n) { out.push_back(n.count); });
  return out;
}

std::vector<Key> FreqIndex::keys() const {
  std::vector<Key> out;
  out.reserve(distinct());
  in_order([&](const Node& n) { out.push_back(n.key); });
  return out;
}

std::vector<std::size_t> FreqIndex::ids() const {
  std::vector<std::size_t> out;
  out.reserve(distinct());
  in_order([&](const Node& n) { out.push_back(n.id); });
  return out;
}

}  // namespace entrosort

#include "entrosort/trees.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace entrosort {

WeightDist::WeightDist(std::vector<std::uint64_t> weights) : weights_(std::move(weights)) {
  if (weights_.empty()) throw std::invalid_argument("invalid distribution: no weights");
  partials_.reserve(weights_.size() + 1);
  partials_.push_back(0);
  for (auto w : weights_) {
    if (w == 0) throw std::invalid_argument("invalid distribution: zero weight");
    partials_.push_back(partials_.back() + w);
    if (partials_.back() >= max_total) {
      throw std::invalid_argument("invalid distribution: total too large");
    }
  }
}

namespace gm {

std::uint64_t term_numerator(std::uint64_t prefix_lo, std::uint64_t prefix_hi,
                             std::size_t term) {
  // Odd terms only use prefix_hi (= P_j); even terms use both ends of item j.
  return term % 2 == 1 ? 2 * prefix_hi : prefix_lo + prefix_hi;
}

std::uint64_t expansion_prefix(std::uint64_t numerator, std::uint64_t total) {
  if (numerator >= 2 * total) return (std::uint64_t{1} << 63) - 1;
  const auto scaled = (static_cast<unsigned __int128>(numerator) << 62) / total;
  return static_cast<std::uint64_t>(scaled);
}

int common_prefix(std::uint64_t a, std::uint64_t b) {
  return std::countl_zero(a ^ b) - 1;
}

}  // namespace gm

namespace {

// Expansion prefixes of the 2k+1 terms, index 0 unused.
std::vector<std::uint64_t> term_expansions(const WeightDist& dist) {
  const std::size_t k = dist.size();
  std::vector<std::uint64_t> e(2 * k + 2, 0);
  for (std::size_t t = 1; t <= 2 * k + 1; ++t) {
    const std::size_t j = t / 2;
    const std::uint64_t hi = dist.partial(j);
    const std::uint64_t lo = t % 2 == 1 ? hi : dist.partial(j - 1);
    e[t] = gm::expansion_prefix(gm::term_numerator(lo, hi, t), dist.total());
  }
  return e;
}

int build_leaf_range(const std::vector<std::uint64_t>& e, std::size_t lo, std::size_t hi,
                     std::vector<LeafTree::Node>& nodes) {
  const int index = static_cast<int>(nodes.size());
  nodes.emplace_back();
  if (lo == hi) {
    nodes.back().leaf = lo;
    return index;
  }
  const int depth = gm::common_prefix(e[lo], e[hi]);
  // Terms lo..hi share `depth` bits; the first with a 1 at that position
  // starts the right subtree.
  const auto first_right = std::partition_point(
      e.begin() + static_cast<std::ptrdiff_t>(lo), e.begin() + static_cast<std::ptrdiff_t>(hi + 1),
      [depth](std::uint64_t v) { return gm::expansion_bit(v, depth) == 0; });
  const auto split = static_cast<std::size_t>(first_right - e.begin()) - 1;
  nodes[static_cast<std::size_t>(index)].leaf = split;
  const int left = build_leaf_range(e, lo, split, nodes);
  const int right = build_leaf_range(e, split + 1, hi, nodes);
  nodes[static_cast<std::size_t>(index)].left = left;
  nodes[static_cast<std::size_t>(index)].right = right;
  return index;
}

int build_node_range(const WeightDist& dist, std::size_t l, std::size_t r,
                     std::vector<NodeTree::Node>& nodes) {
  if (l > r) return -1;
  // Midpoint doubled: compare 2 * P_j against P_{l-1} + P_r.
  const std::uint64_t twice_mid = dist.partial(l - 1) + dist.partial(r);
  std::size_t lo = l, hi = r;
  while (lo < hi) {
    const std::size_t mid = lo + (hi - lo) / 2;
    if (2 * dist.partial(mid) > twice_mid) {
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  const std::size_t m = lo;
  const int index = static_cast<int>(nodes.size());
  nodes.push_back(NodeTree::Node{m, -1, -1});
  const int left = m > l ? build_node_range(dist, l, m - 1, nodes) : -1;
  const int right = build_node_range(dist, m + 1, r, nodes);
  nodes[static_cast<std::size_t>(index)].left = left;
  nodes[static_cast<std::size_t>(index)].right = right;
  return index;
}

}  // namespace

std::vector<Codeword> gm_codewords(const WeightDist& dist) {
  const auto e = term_expansions(dist);
  const std::size_t terms = 2 * dist.size() + 1;
  std::vector<Codeword> words;
  words.reserve(terms);
  for (std::size_t t = 1; t <= terms; ++t) {
    int shared = 0;
    if (t > 1) shared = std::max(shared, gm::common_prefix(e[t - 1], e[t]));
    if (t < terms) shared = std::max(shared, gm::common_prefix(e[t], e[t + 1]));
    Codeword word;
    for (int b = 0; b <= shared; ++b) word.push_back(gm::expansion_bit(e[t], b) ? '1' : '0');
    words.push_back(std::move(word));
  }
  return words;
}

LeafTree build_gm_tree(const WeightDist& dist) {
  const auto e = term_expansions(dist);
  std::vector<LeafTree::Node> nodes;
  nodes.reserve(4 * dist.size() + 1);
  const int root = build_leaf_range(e, 1, 2 * dist.size() + 1, nodes);
  return LeafTree(std::move(nodes), root, dist.size());
}

NodeTree build_mehlhorn_tree(const WeightDist& dist) {
  std::vector<NodeTree::Node> nodes;
  nodes.reserve(dist.size());
  const int root = build_node_range(dist, 1, dist.size(), nodes);
  return NodeTree(std::move(nodes), root);
}

std::vector<int> leaf_depths(const LeafTree& tree) {
  std::vector<int> depths(tree.leaf_count(), 0);
  std::vector<std::pair<int, int>> stack{{tree.root(), 0}};
  while (!stack.empty()) {
    auto [index, depth] = stack.back();
    stack.pop_back();
    const auto& node = tree.node(index);
    if (node.is_leaf()) {
      depths[node.leaf - 1] = depth;
    } else {
      stack.emplace_back(node.left, depth + 1);
      stack.emplace_back(node.right, depth + 1);
    }
  }
  return depths;
}

std::vector<int> node_depths(const NodeTree& tree) {
  std::vector<int> depths(tree.size(), 0);
  if (tree.root() < 0) return depths;
  std::vector<std::pair<int, int>> stack{{tree.root(), 0}};
  while (!stack.empty()) {
    auto [index, depth] = stack.back();
    stack.pop_back();
    const auto& node = tree.node(index);
    depths[node.item - 1] = depth;
    if (node.left >= 0) stack.emplace_back(node.left, depth + 1);
    if (node.right >= 0) stack.emplace_back(node.right, depth + 1);
  }
  return depths;
}

}  // namespace entrosort

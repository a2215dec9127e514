#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace entrosort {

// Positive integer weights w_1..w_k with exact partial sums P_0..P_k.
// Probabilities p_i = w_i / total are only ever handled as integer ratios.
class WeightDist {
 public:
  // Totals are capped so that every scaled term fits in 128-bit arithmetic
  // with 63 bits of binary expansion.
  static constexpr std::uint64_t max_total = std::uint64_t{1} << 40;

  explicit WeightDist(std::vector<std::uint64_t> weights);

  std::size_t size() const { return weights_.size(); }
  std::uint64_t total() const { return partials_.back(); }
  std::span<const std::uint64_t> weights() const { return weights_; }
  // 1-based, as in w_1..w_k.
  std::uint64_t weight(std::size_t i) const { return weights_[i - 1]; }
  // P_j for 0 <= j <= k.
  std::uint64_t partial(std::size_t j) const { return partials_[j]; }

  friend bool operator==(const WeightDist&, const WeightDist&) = default;

 private:
  std::vector<std::uint64_t> weights_;
  std::vector<std::uint64_t> partials_;
};

// A finite bit string over {'0','1'}.
using Codeword = std::string;

namespace gm {

// The 2k+1 terms 0, p_1/2, p_1, p_1 + p_2/2, ..., 1 are the numerators
// u_t / (2 * total), t = 1..2k+1. Odd t = 2j+1 gives u = 2 P_j, even
// t = 2j gives u = P_{j-1} + P_j.
std::uint64_t term_numerator(std::uint64_t prefix_lo, std::uint64_t prefix_hi,
                             std::size_t term);

// First 63 bits of the binary expansion of u / (2 * total), as an integer
// in [0, 2^63). The term 1 expands as all ones.
std::uint64_t expansion_prefix(std::uint64_t numerator, std::uint64_t total);

// Length of the common prefix of two distinct 63-bit expansions.
int common_prefix(std::uint64_t a, std::uint64_t b);

// Bit `depth` (0 = first bit after the binary point) of an expansion.
inline int expansion_bit(std::uint64_t expansion, int depth) {
  return static_cast<int>((expansion >> (62 - depth)) & 1U);
}

}  // namespace gm

std::vector<Codeword> gm_codewords(const WeightDist& dist);

struct LeafLabel {
  std::size_t leaf = 0;  // 1..2k+1
  bool blank() const { return leaf % 2 == 1; }
  // Item index carried by an even leaf.
  std::size_t item() const { return leaf / 2; }
};

// Ordered leaf-oriented tree with 2k+1 leaves: even leaves carry items
// 1..k, odd leaves are the gaps between them. Every internal node branches
// (single-child trie levels are compressed away).
class LeafTree {
 public:
  struct Node {
    int left = -1;
    int right = -1;
    // Leaf number for a leaf, or the rightmost leaf of the left subtree
    // for an internal node.
    std::size_t leaf = 0;

    bool is_leaf() const { return left < 0; }
  };

  LeafTree() = default;
  LeafTree(std::vector<Node> nodes, int root, std::size_t items)
      : nodes_(std::move(nodes)), root_(root), items_(items) {}

  int root() const { return root_; }
  const Node& node(int index) const { return nodes_[static_cast<std::size_t>(index)]; }
  std::size_t node_count() const { return nodes_.size(); }
  std::size_t item_count() const { return items_; }
  std::size_t leaf_count() const { return 2 * items_ + 1; }

  // (rightmost leaf of left subtree, leftmost leaf of right subtree).
  // Exactly one of the two is blank.
  std::pair<LeafLabel, LeafLabel> labels(int internal) const {
    const auto split = node(internal).leaf;
    return {LeafLabel{split}, LeafLabel{split + 1}};
  }

 private:
  std::vector<Node> nodes_;
  int root_ = -1;
  std::size_t items_ = 0;
};

// Node-oriented search tree; in-order traversal visits items 1..k.
class NodeTree {
 public:
  struct Node {
    std::size_t item = 0;
    int left = -1;
    int right = -1;
  };

  NodeTree() = default;
  NodeTree(std::vector<Node> nodes, int root) : nodes_(std::move(nodes)), root_(root) {}

  int root() const { return root_; }
  const Node& node(int index) const { return nodes_[static_cast<std::size_t>(index)]; }
  std::size_t size() const { return nodes_.size(); }

 private:
  std::vector<Node> nodes_;
  int root_ = -1;
};

// Path-compressed trie over gm_codewords(dist).
LeafTree build_gm_tree(const WeightDist& dist);

// Bisection of the cumulative weight interval: the root of [l..r] is the
// item whose half-open interval [P_{m-1}, P_m) holds the midpoint of
// [P_{l-1}, P_r). A midpoint on a boundary goes to the item starting there.
NodeTree build_mehlhorn_tree(const WeightDist& dist);

// Depth of every leaf, ordered by leaf number (root depth 0).
std::vector<int> leaf_depths(const LeafTree& tree);
// Depth of every node, ordered by item.
std::vector<int> node_depths(const NodeTree& tree);

}  // namespace entrosort

#include "entrosort/sorter.hpp"

#include <stdexcept>
#include <string>

namespace entrosort {

std::string_view to_string(Engine engine) {
  switch (engine) {
    case Engine::rebuild_each: return "rebuild";
    case Engine::implicit: return "implicit";
    case Engine::batched: return "batched";
  }
  return "?";
}

Engine parse_engine(std::string_view text) {
  if (text == "rebuild" || text == "rebuild-each") return Engine::rebuild_each;
  if (text == "implicit") return Engine::implicit;
  if (text == "batched") return Engine::batched;
  throw std::invalid_argument("unknown engine: " + std::string(text));
}

std::vector<Item> GroupedOutput::assemble(std::span<const std::size_t> order) const {
  std::vector<Item> items;
  for (auto id : order) items.insert(items.end(), groups_[id].begin(), groups_[id].end());
  return items;
}

void GapCounts::add(std::size_t gap, std::uint64_t delta) {
  for (std::size_t i = gap + 1; i < tree_.size(); i += i & (~i + 1)) tree_[i] += delta;
}

std::uint64_t GapCounts::prefix(std::size_t gap) const {
  std::uint64_t sum = 0;
  for (std::size_t i = gap; i > 0; i -= i & (~i + 1)) sum += tree_[i];
  return sum;
}

namespace detail {

namespace {

Placement from_leaf(std::size_t leaf) {
  if (leaf % 2 == 0) return Placement{true, leaf / 2};
  return Placement{false, (leaf - 1) / 2};
}

// One branching node: labels (leaf c, leaf c+1), one of them blank.
// Returns true to descend right.
bool branch_right(std::size_t split, Key key, Key x, CountingComparator& cmp) {
  if (split % 2 == 1) {
    // (blank, key): go right iff key <= x.
    return cmp.compare_binary(key, x) == BinaryResult::le;
  }
  // (key, blank): go left iff x <= key.
  return cmp.compare_binary(x, key) == BinaryResult::gt;
}

}  // namespace

std::size_t descend_leaf_tree(const LeafTree& tree, std::span<const Key> keys, Key x,
                              CountingComparator& cmp) {
  int cur = tree.root();
  while (!tree.node(cur).is_leaf()) {
    const auto& node = tree.node(cur);
    const auto [left_label, right_label] = tree.labels(cur);
    const std::size_t item = left_label.blank() ? right_label.item() : left_label.item();
    cur = branch_right(node.leaf, keys[item - 1], x, cmp) ? node.right : node.left;
  }
  return tree.node(cur).leaf;
}

std::size_t descend_leaf_tree_implicit(const FreqIndex& freq, Key x, CountingComparator& cmp) {
  const std::size_t k = freq.distinct();
  const std::uint64_t total = freq.total();
  auto expansion = [&](std::size_t term) {
    const std::size_t j = term / 2;
    const std::uint64_t hi = freq.prefix_weight(j);
    const std::uint64_t lo = term % 2 == 1 ? hi : freq.prefix_weight(j - 1);
    return gm::expansion_prefix(gm::term_numerator(lo, hi, term), total);
  };

  std::size_t lo = 1, hi = 2 * k + 1;
  std::uint64_t e_lo = expansion(lo), e_hi = expansion(hi);
  while (lo < hi) {
    // Next branching node: first bit where the extreme terms differ.
    // Single-child trie levels above it cost nothing.
    const int depth = gm::common_prefix(e_lo, e_hi);
    const int shift = 62 - depth;
    const std::uint64_t boundary = (e_hi >> shift) << shift;
    // Terms below boundary / 2^63 go left. In weight units the boundary is
    // boundary * total / 2^63.
    const auto scaled = static_cast<unsigned __int128>(boundary) * total;
    const auto floor_weight = static_cast<std::uint64_t>(scaled >> 63);
    const std::size_t r = freq.select_by_cumweight(floor_weight);
    const std::uint64_t p_before = freq.prefix_weight(r - 1);
    const std::uint64_t p_at = p_before + freq.count_at(r);
    const bool gap_below = (static_cast<unsigned __int128>(p_before) << 63) < scaled;
    const bool item_below = (static_cast<unsigned __int128>(p_before + p_at) << 62) < scaled;
    const std::size_t split = 2 * (r - 1) + (gap_below ? 1 : 0) + (item_below ? 1 : 0);

    const std::size_t item = split % 2 == 1 ? (split + 1) / 2 : split / 2;
    if (branch_right(split, freq.key_at(item), x, cmp)) {
      lo = split + 1;
      e_lo = expansion(lo);
    } else {
      hi = split;
      e_hi = expansion(hi);
    }
  }
  return lo;
}

Placement descend_node_tree(const NodeTree& tree, std::span<const Key> keys, Key x,
                            CountingComparator& cmp) {
  int cur = tree.root();
  std::size_t less = 0;
  while (cur >= 0) {
    const auto& node = tree.node(cur);
    switch (cmp.compare_ternary(x, keys[node.item - 1])) {
      case TernaryResult::eq: return Placement{true, node.item};
      case TernaryResult::lt: cur = node.left; break;
      case TernaryResult::gt:
        less = node.item;
        cur = node.right;
        break;
    }
  }
  return Placement{false, less};
}

Placement descend_node_tree_implicit(const FreqIndex& freq, Key x, CountingComparator& cmp) {
  std::size_t l = 1, r = freq.distinct();
  std::uint64_t a = 0, b = freq.total();
  std::size_t less = 0;
  while (l <= r) {
    const std::size_t m = freq.select_by_cumweight((a + b) / 2);
    switch (cmp.compare_ternary(x, freq.key_at(m))) {
      case TernaryResult::eq: return Placement{true, m};
      case TernaryResult::lt:
        b = freq.prefix_weight(m - 1);
        r = m - 1;
        break;
      case TernaryResult::gt:
        a = freq.prefix_weight(m);
        l = m + 1;
        less = m;
        break;
    }
  }
  return Placement{false, less};
}

}  // namespace detail

Sorter::Sorter(Mode mode, Engine engine) {
  if (engine == Engine::batched && mode != Mode::binary) {
    throw std::invalid_argument("batched engine supports binary mode only");
  }
  state_.mode = mode;
  state_.engine = engine;
  state_.transcript.mode = mode;
  state_.transcript.engine = std::string(to_string(engine));
}

Placement Sorter::place(Key key, CountingComparator& cmp) const {
  const FreqIndex& freq = state_.freq;
  // S[1] needs no comparisons.
  if (freq.empty()) return Placement{false, 0};

  if (state_.engine == Engine::batched) {
    const BatchedState& b = state_.batched;
    const std::size_t leaf = detail::descend_leaf_tree(b.tree, b.tree_keys, key, cmp);
    if (leaf % 2 == 0) {
      const std::size_t j = leaf / 2;
      return Placement{true, j + b.gap_counts.prefix(j)};
    }
    const std::size_t gap = (leaf - 1) / 2;
    const std::size_t before = gap + b.gap_counts.prefix(gap);
    const auto hit = b.overflow[gap].locate(
        [&](Key node_key) { return cmp.compare_ternary_via_binary(key, node_key); });
    if (hit.found) return Placement{true, before + hit.rank};
    return Placement{false, before + hit.rank, gap, hit.rank};
  }

  if (state_.mode == Mode::binary) {
    if (state_.engine == Engine::implicit) {
      const std::size_t leaf = detail::descend_leaf_tree_implicit(freq, key, cmp);
      return detail::from_leaf(leaf);
    }
    const WeightDist dist(freq.weights());
    const auto keys = freq.keys();
    const std::size_t leaf = detail::descend_leaf_tree(build_gm_tree(dist), keys, key, cmp);
    return detail::from_leaf(leaf);
  }

  if (state_.engine == Engine::implicit) return detail::descend_node_tree_implicit(freq, key, cmp);
  const WeightDist dist(freq.weights());
  const auto keys = freq.keys();
  return detail::descend_node_tree(build_mehlhorn_tree(dist), keys, key, cmp);
}

void Sorter::commit(const Placement& where, const Item& item, StepReport& report) {
  FreqIndex& freq = state_.freq;
  if (where.seen) {
    report.occ_before = freq.add_at(where.rank);
    state_.output.append(freq.id_at(where.rank), item);
  } else {
    const std::size_t id = state_.output.open_group(item);
    freq.insert_at(where.rank, item.key, id);
    if (where.gap != Placement::no_gap) {
      state_.batched.overflow[where.gap].insert_at(where.gap_rank, item.key, 0);
      state_.batched.gap_counts.add(where.gap, 1);
    }
  }
  report.is_new = !where.seen;
  report.rank = where.rank;
}

void Sorter::rebuild() {
  BatchedState& b = state_.batched;
  b.tree = build_gm_tree(WeightDist(state_.freq.weights()));
  b.tree_keys = state_.freq.keys();
  b.overflow.assign(b.tree_keys.size() + 1, FreqIndex{});
  b.gap_counts = GapCounts(b.tree_keys.size() + 1);
  b.since_rebuild = 0;
  b.distinct_at_rebuild = b.tree_keys.size();
  b.built = true;
  ++b.rebuilds;
}

StepReport Sorter::process(const Item& item) {
  auto& transcript = state_.transcript;
  if (item.arrival != transcript.steps.size() + 1) {
    throw std::invalid_argument("Sorter::process: arrival " + std::to_string(item.arrival) +
                                " out of sequence");
  }
  StepReport report;
  report.i = item.arrival;
  report.key = item.key;

  const std::uint64_t before = state_.cmp.total();
  const std::size_t distinct_before = state_.freq.distinct();
  const Placement where = place(item.key, state_.cmp);
  commit(where, item, report);
  report.comparisons = state_.cmp.total() - before;

  transcript.steps.push_back(StepRecord{report.i, report.comparisons, report.occ_before,
                                        distinct_before, report.is_new});
  transcript.comparison_digest = state_.cmp.digest();

  if (state_.engine == Engine::batched) {
    BatchedState& b = state_.batched;
    if (!b.built) {
      rebuild();
    } else if (++b.since_rebuild == b.distinct_at_rebuild) {
      rebuild();
    }
  }
  return report;
}

std::uint64_t Sorter::probe_cost(Key key) const {
  if (!state_.freq.find(key).found) {
    throw std::invalid_argument("probe_cost: key " + std::to_string(key.value) + " not seen");
  }
  CountingComparator scratch;
  (void)place(key, scratch);
  return scratch.total();
}

std::vector<Item> Sorter::output() const {
  const auto order = state_.freq.ids();
  return state_.output.assemble(order);
}

SortResult Sorter::finalize() const { return SortResult{output(), state_.transcript}; }

}  // namespace entrosort

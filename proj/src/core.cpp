#include "entrosort/core.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace entrosort {

std::string_view to_string(Mode mode) {
  return mode == Mode::binary ? "binary" : "ternary";
}

Mode parse_mode(std::string_view text) {
  if (text == "binary") return Mode::binary;
  if (text == "ternary") return Mode::ternary;
  throw std::invalid_argument("unknown mode: " + std::string(text));
}

void CountingComparator::mix(std::uint64_t tag, Key x, Key y,
                             std::uint64_t outcome) {
  // FNV-1a over the four words.
  for (std::uint64_t word : {tag, static_cast<std::uint64_t>(x.value),
                             static_cast<std::uint64_t>(y.value), outcome}) {
    for (int b = 0; b < 8; ++b) {
      digest_ ^= (word >> (8 * b)) & 0xffU;
      digest_ *= 0x100000001b3ULL;
    }
  }
}

BinaryResult CountingComparator::compare_binary(Key x, Key y) {
  ++binary_count_;
  const BinaryResult r = x.value <= y.value ? BinaryResult::le : BinaryResult::gt;
  mix('b', x, y, static_cast<std::uint64_t>(r));
  return r;
}

TernaryResult CountingComparator::compare_ternary(Key x, Key y) {
  ++ternary_count_;
  const TernaryResult r = x.value < y.value    ? TernaryResult::lt
                          : x.value == y.value ? TernaryResult::eq
                                               : TernaryResult::gt;
  mix('t', x, y, static_cast<std::uint64_t>(r));
  return r;
}

TernaryResult CountingComparator::compare_ternary_via_binary(Key x, Key y) {
  const bool x_le_y = compare_binary(x, y) == BinaryResult::le;
  const bool y_le_x = compare_binary(y, x) == BinaryResult::le;
  if (x_le_y && y_le_x) return TernaryResult::eq;
  return x_le_y ? TernaryResult::lt : TernaryResult::gt;
}

std::uint64_t Transcript::total_comparisons() const {
  std::uint64_t sum = 0;
  for (const auto& s : steps) sum += s.comparisons;
  return sum;
}

std::string Transcript::serialize_steps() const {
  std::ostringstream out;
  for (const auto& s : steps) {
    out << s.i << ' ' << s.comparisons << ' ' << s.occ_before << ' '
        << s.distinct_before << ' ' << (s.is_new ? 1 : 0) << '\n';
  }
  out << "digest " << comparison_digest << '\n';
  return out.str();
}

std::string_view to_string(StabilityVerdict verdict) {
  switch (verdict) {
    case StabilityVerdict::stable: return "stable";
    case StabilityVerdict::not_stable: return "not-stable";
    case StabilityVerdict::not_a_permutation: return "not-a-permutation";
  }
  return "?";
}

StabilityVerdict verify_stable(std::span<const Item> stream,
                               std::span<const Item> output) {
  if (stream.size() != output.size()) return StabilityVerdict::not_a_permutation;

  auto by_arrival = [](const Item& a, const Item& b) { return a.arrival < b.arrival; };
  std::vector<Item> lhs(stream.begin(), stream.end());
  std::vector<Item> rhs(output.begin(), output.end());
  std::sort(lhs.begin(), lhs.end(), by_arrival);
  std::sort(rhs.begin(), rhs.end(), by_arrival);
  if (lhs != rhs) return StabilityVerdict::not_a_permutation;

  std::vector<Item> expected(stream.begin(), stream.end());
  std::stable_sort(expected.begin(), expected.end(), [](const Item& a, const Item& b) {
    return a.key.value < b.key.value ||
           (a.key.value == b.key.value && a.arrival < b.arrival);
  });
  return std::equal(expected.begin(), expected.end(), output.begin())
             ? StabilityVerdict::stable
             : StabilityVerdict::not_stable;
}

std::vector<Item> make_items(std::span<const Key> keys) {
  std::vector<Item> items;
  items.reserve(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    items.push_back(Item{keys[i], static_cast<std::uint64_t>(i + 1)});
  }
  return items;
}

}  // namespace entrosort

#include "doctest.h"

#include <cmath>
#include <map>

#include "entrosort/freq_index.hpp"
#include "entrosort/streams.hpp"

using namespace entrosort;

TEST_CASE("record examples") {
  FreqIndex f;
  auto r = f.record(Key{5});
  CHECK(r.occ_before == 0);
  CHECK(r.rank == 0);
  r = f.record(Key{5});
  CHECK(r.occ_before == 1);
  CHECK(r.rank == 0);
  f.record(Key{9});
  r = f.record(Key{7});
  CHECK(r.occ_before == 0);
  CHECK(r.rank == 1);
}

TEST_CASE("prefix and select examples") {
  FreqIndex f;
  f.record(Key{5});
  f.record(Key{5});
  f.record(Key{9});
  CHECK(f.prefix_weight(0) == 0);
  CHECK(f.prefix_weight(1) == 2);
  CHECK(f.prefix_weight(2) == 3);
  CHECK(f.select_by_cumweight(0) == 1);
  CHECK(f.select_by_cumweight(1) == 1);
  CHECK(f.select_by_cumweight(2) == 2);
  CHECK_THROWS_AS(f.select_by_cumweight(3), std::out_of_range);
  CHECK_THROWS_AS(f.prefix_weight(3), std::out_of_range);
  CHECK(f.key_at(2) == Key{9});
  CHECK(f.count_at(1) == 2);
}

TEST_CASE("matches a std::map oracle under random operations") {
  SplitMix64 rng(21);
  FreqIndex f;
  std::map<Key, std::uint64_t> oracle;
  std::map<Key, std::size_t> ids;
  for (int op = 0; op < 100000; ++op) {
    const Key key{static_cast<std::int64_t>(rng.below(3000))};
    switch (rng.below(4)) {
      case 0: {  // key-based record
        const auto it = oracle.find(key);
        const std::uint64_t before = it == oracle.end() ? 0 : it->second;
        const std::size_t less =
            static_cast<std::size_t>(std::distance(oracle.begin(), oracle.lower_bound(key)));
        const auto r = f.record(key);
        CHECK(r.occ_before == before);
        CHECK(r.rank == less);
        if (before == 0) ids[key] = f.id_at(less + 1);
        ++oracle[key];
        break;
      }
      case 1: {  // rank-based commit
        const auto lb = oracle.lower_bound(key);
        const std::size_t less = static_cast<std::size_t>(std::distance(oracle.begin(), lb));
        if (lb != oracle.end() && lb->first == key) {
          CHECK(f.add_at(less + 1) == lb->second);
          ++lb->second;
        } else {
          const std::size_t id = 1000000 + static_cast<std::size_t>(op);
          f.insert_at(less, key, id);
          oracle[key] = 1;
          ids[key] = id;
        }
        break;
      }
      case 2: {  // prefix / select
        if (oracle.empty()) break;
        const std::size_t j = static_cast<std::size_t>(rng.below(oracle.size() + 1));
        std::uint64_t expect = 0;
        auto it = oracle.begin();
        for (std::size_t s = 0; s < j; ++s, ++it) expect += it->second;
        CHECK(f.prefix_weight(j) == expect);
        const std::uint64_t w = rng.below(f.total());
        std::uint64_t acc = 0;
        std::size_t rank = 0;
        for (const auto& [k, c] : oracle) {
          ++rank;
          if (w < acc + c) break;
          acc += c;
        }
        CHECK(f.select_by_cumweight(w) == rank);
        break;
      }
      default: {  // find
        const auto located = f.find(key);
        const auto lb = oracle.lower_bound(key);
        const std::size_t less = static_cast<std::size_t>(std::distance(oracle.begin(), lb));
        const bool present = lb != oracle.end() && lb->first == key;
        CHECK(located.found == present);
        CHECK(located.rank == (present ? less + 1 : less));
        if (present) {
          CHECK(f.key_at(less + 1) == key);
          CHECK(f.count_at(less + 1) == lb->second);
          CHECK(f.id_at(less + 1) == ids[key]);
        }
      }
    }
    if (op % 5000 == 0) {
      std::vector<std::uint64_t> weights;
      std::vector<Key> keys;
      for (const auto& [k, c] : oracle) {
        keys.push_back(k);
        weights.push_back(c);
      }
      CHECK(f.weights() == weights);
      CHECK(f.keys() == keys);
      CHECK(f.distinct() == oracle.size());
    }
  }
}

TEST_CASE("searches visit O(log sigma) nodes") {
  FreqIndex f;
  // Ascending inserts are the worst case for an unbalanced tree.
  for (std::int64_t v = 1; v <= 1 << 15; ++v) {
    f.record(Key{v});
    const double sigma = static_cast<double>(f.distinct());
    const auto before = f.visits();
    f.find(Key{v});
    f.find(Key{0});
    const auto per_query = static_cast<double>(f.visits() - before) / 2.0;
    CHECK(per_query <= 2.0 * std::log2(sigma + 1.0));
  }
  CHECK(f.height() <= static_cast<int>(1.45 * std::log2((1 << 15) + 2.0)));
}

TEST_CASE("locate reports the probe's rank") {
  FreqIndex f;
  for (std::int64_t v : {10, 20, 30}) f.record(Key{v});
  auto probe = [](std::int64_t x) {
    return [x](Key k) {
      return x < k.value ? TernaryResult::lt : x == k.value ? TernaryResult::eq : TernaryResult::gt;
    };
  };
  CHECK(f.locate(probe(20)).found);
  CHECK(f.locate(probe(20)).rank == 2);
  CHECK_FALSE(f.locate(probe(25)).found);
  CHECK(f.locate(probe(25)).rank == 2);
  CHECK(f.locate(probe(5)).rank == 0);
  CHECK(f.locate(probe(35)).rank == 3);
}

TEST_CASE("rank arguments are range checked") {
  FreqIndex f;
  CHECK_THROWS_AS(f.add_at(1), std::out_of_range);
  CHECK_THROWS_AS(f.insert_at(1, Key{1}, 0), std::out_of_range);
  f.record(Key{1});
  CHECK_THROWS_AS(f.key_at(0), std::out_of_range);
  CHECK_THROWS_AS(f.key_at(2), std::out_of_range);
}

#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>

#include "entrosort/sorter.hpp"
#include "entrosort/streams.hpp"

using namespace entrosort;

namespace {

const Engine kEngines[] = {Engine::rebuild_each, Engine::implicit, Engine::batched};

bool supported(Mode mode, Engine engine) { return !(engine == Engine::batched && mode == Mode::ternary); }

std::vector<Key> keys_of(std::initializer_list<std::int64_t> values) {
  std::vector<Key> out;
  for (auto v : values) out.push_back(Key{v});
  return out;
}

std::vector<Key> random_keys(SplitMix64& rng, std::uint64_t n, std::uint64_t sigma) {
  StreamSpec spec;
  const Dist dists[] = {Dist::uniform, Dist::zipf, Dist::runs};
  spec.dist = dists[rng.below(3)];
  spec.n = n;
  spec.sigma = sigma;
  spec.seed = rng.next();
  return generate_stream(spec);
}

SortResult sort_all(Mode mode, Engine engine, std::span<const Key> keys) {
  Sorter s(mode, engine);
  for (const auto& item : make_items(keys)) s.process(item);
  return s.finalize();
}

std::vector<Item> reference_sort(std::span<const Key> keys) {
  auto items = make_items(keys);
  std::stable_sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.key < b.key; });
  return items;
}

}  // namespace

TEST_CASE("engine names round-trip") {
  for (auto e : kEngines) CHECK(parse_engine(to_string(e)) == e);
  CHECK(parse_engine("rebuild-each") == Engine::rebuild_each);
  CHECK_THROWS_AS(parse_engine("lazy"), std::invalid_argument);
  CHECK_THROWS_AS(Sorter(Mode::ternary, Engine::batched), std::invalid_argument);
}

TEST_CASE("probe_cost examples") {
  for (auto engine : {Engine::rebuild_each, Engine::implicit}) {
    Sorter t(Mode::ternary, engine);
    for (const auto& item : make_items(keys_of({1, 2, 3}))) t.process(item);
    CHECK(t.probe_cost(Key{2}) == 1);
    CHECK(t.probe_cost(Key{1}) == 2);
    CHECK(t.probe_cost(Key{3}) == 2);
    CHECK_THROWS(t.probe_cost(Key{4}));
  }
  for (auto engine : kEngines) {
    Sorter b(Mode::binary, engine);
    b.process(Item{Key{7}, 1});
    CHECK(b.probe_cost(Key{7}) == 2);
  }
}

TEST_CASE("all-equal stream costs exactly one or two per step") {
  const std::vector<Key> keys(100, Key{42});
  CHECK(sort_all(Mode::ternary, Engine::rebuild_each, keys).transcript.total_comparisons() == 99);
  CHECK(sort_all(Mode::ternary, Engine::implicit, keys).transcript.total_comparisons() == 99);
  CHECK(sort_all(Mode::binary, Engine::rebuild_each, keys).transcript.total_comparisons() == 198);
  CHECK(sort_all(Mode::binary, Engine::implicit, keys).transcript.total_comparisons() == 198);
  CHECK(sort_all(Mode::binary, Engine::batched, keys).transcript.total_comparisons() == 198);
}

TEST_CASE("output is the stable sort for every engine") {
  SplitMix64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    const auto n = 1 + rng.below(3000);
    const auto keys = random_keys(rng, n, 1 + rng.below(std::min<std::uint64_t>(n, 200)));
    const auto expected = reference_sort(keys);
    for (auto mode : {Mode::binary, Mode::ternary}) {
      for (auto engine : kEngines) {
        if (!supported(mode, engine)) continue;
        CHECK(sort_all(mode, engine, keys).items == expected);
      }
    }
  }
}

TEST_CASE("step reports agree with a direct count of the prefix") {
  SplitMix64 rng(32);
  for (int trial = 0; trial < 40; ++trial) {
    const auto n = 1 + rng.below(4000);
    const auto keys = random_keys(rng, n, 1 + rng.below(std::min<std::uint64_t>(n, 300)));
    for (auto mode : {Mode::binary, Mode::ternary}) {
      for (auto engine : kEngines) {
        if (!supported(mode, engine)) continue;
        Sorter s(mode, engine);
        std::map<Key, std::uint64_t> seen;
        for (const auto& item : make_items(keys)) {
          const auto report = s.process(item);
          const auto occ = seen.count(item.key) ? seen[item.key] : 0;
          const auto less = static_cast<std::size_t>(std::distance(seen.begin(), seen.lower_bound(item.key)));
          CHECK(report.i == item.arrival);
          CHECK(report.occ_before == occ);
          CHECK(report.is_new == (occ == 0));
          CHECK(report.rank == (occ == 0 ? less : less + 1));
          ++seen[item.key];
        }
        CHECK(s.frequencies().distinct() == seen.size());
      }
    }
  }
}

TEST_CASE("per-step costs respect the local bounds") {
  // Recomputed from the stream itself, not from the transcript.
  SplitMix64 rng(33);
  for (int trial = 0; trial < 40; ++trial) {
    const auto n = 2 + rng.below(5000);
    const auto keys = random_keys(rng, n, 1 + rng.below(std::min<std::uint64_t>(n, 256)));
    for (auto mode : {Mode::binary, Mode::ternary}) {
      for (auto engine : {Engine::rebuild_each, Engine::implicit}) {
        Sorter s(mode, engine);
        std::map<Key, std::uint64_t> seen;
        for (const auto& item : make_items(keys)) {
          const auto report = s.process(item);
          const double i = static_cast<double>(item.arrival);
          const auto occ = seen[item.key]++;
          if (item.arrival == 1) {
            CHECK(report.comparisons == 0);
            continue;
          }
          const double limit = occ > 0 ? std::log2((i - 1) / static_cast<double>(occ)) + (mode == Mode::binary ? 2 : 1)
                                       : std::log2(i - 1) + (mode == Mode::binary ? 3 : 1);
          CHECK(static_cast<double>(report.comparisons) <= limit + 1e-9);
        }
      }
    }
  }
}

TEST_CASE("rebuild and implicit engines issue identical comparisons") {
  SplitMix64 rng(34);
  for (int trial = 0; trial < 40; ++trial) {
    const auto n = 1 + rng.below(5000);
    const auto keys = random_keys(rng, n, 1 + rng.below(std::min<std::uint64_t>(n, 128)));
    for (auto mode : {Mode::binary, Mode::ternary}) {
      const auto a = sort_all(mode, Engine::rebuild_each, keys).transcript;
      const auto b = sort_all(mode, Engine::implicit, keys).transcript;
      CHECK(a.steps == b.steps);
      CHECK(a.comparison_digest == b.comparison_digest);
      CHECK(a.serialize_steps() == b.serialize_steps());
    }
  }
}

TEST_CASE("binary mode issues only binary comparisons") {
  SplitMix64 rng(35);
  const auto keys = random_keys(rng, 5000, 64);
  for (auto engine : kEngines) {
    Sorter s(Mode::binary, engine);
    for (const auto& item : make_items(keys)) s.process(item);
    CHECK(s.comparator().ternary_count() == 0);
    CHECK(s.comparator().binary_count() == s.transcript().total_comparisons());
  }
  Sorter t(Mode::ternary, Engine::implicit);
  for (const auto& item : make_items(keys)) t.process(item);
  CHECK(t.comparator().binary_count() == 0);
}

TEST_CASE("probe_cost equals a snapshot, process and restore") {
  SplitMix64 rng(36);
  for (int trial = 0; trial < 30; ++trial) {
    const auto keys = random_keys(rng, 200 + rng.below(800), 1 + rng.below(40));
    for (auto mode : {Mode::binary, Mode::ternary}) {
      for (auto engine : kEngines) {
        if (!supported(mode, engine)) continue;
        Sorter s(mode, engine);
        const auto items = make_items(keys);
        for (std::size_t p = 0; p < items.size(); ++p) {
          s.process(items[p]);
          if (p % 37 != 0) continue;
          const auto before = s.transcript().serialize_steps();
          const auto spent = s.comparator().total();
          for (Key key : s.frequencies().keys()) {
            const auto cost = s.probe_cost(key);
            Sorter trial_run = Sorter::restore(s.snapshot());
            const auto report = trial_run.process(Item{key, s.steps() + 1});
            CHECK(cost == report.comparisons);
          }
          CHECK(s.transcript().serialize_steps() == before);
          CHECK(s.comparator().total() == spent);
        }
      }
    }
  }
}

TEST_CASE("snapshot and restore interleave with processing") {
  SplitMix64 rng(37);
  for (int trial = 0; trial < 20; ++trial) {
    const auto keys = random_keys(rng, 500 + rng.below(2000), 1 + rng.below(100));
    const auto items = make_items(keys);
    for (auto mode : {Mode::binary, Mode::ternary}) {
      for (auto engine : kEngines) {
        if (!supported(mode, engine)) continue;
        const auto straight = sort_all(mode, engine, keys);

        Sorter s(mode, engine);
        for (std::size_t p = 0; p < items.size(); ++p) {
          if (rng.below(50) == 0) {
            // Detour: run ahead on junk, then rewind.
            const auto saved = s.snapshot();
            for (int d = 0; d < 5; ++d) {
              s.process(Item{Key{static_cast<std::int64_t>(rng.below(1000))}, s.steps() + 1});
            }
            s = Sorter::restore(saved);
          }
          s.process(items[p]);
        }
        const auto resumed = s.finalize();
        CHECK(resumed.items == straight.items);
        CHECK(resumed.transcript.serialize_steps() == straight.transcript.serialize_steps());
      }
    }
  }
}

TEST_CASE("batched rebuilds follow the doubling schedule") {
  SplitMix64 rng(38);
  for (int trial = 0; trial < 40; ++trial) {
    const auto n = 1 + rng.below(20000);
    const auto keys = random_keys(rng, n, 1 + rng.below(std::min<std::uint64_t>(n, 200)));
    // Schedule oracle: r_1 = 1, r_{t+1} = r_t + distinct(S[1..r_t]).
    std::set<Key> distinct;
    std::uint64_t next = 1, expected = 0;
    for (std::uint64_t i = 1; i <= n; ++i) {
      distinct.insert(keys[i - 1]);
      if (i == next) {
        ++expected;
        next = i + distinct.size();
      }
    }
    Sorter s(Mode::binary, Engine::batched);
    for (const auto& item : make_items(keys)) s.process(item);
    CHECK(s.rebuild_count() == expected);
  }
}

TEST_CASE("batched seen keys cost what the frozen tree charges") {
  // Right after a rebuild the batched engine uses the same tree as the
  // per-step engines, so the first step after it must agree with them.
  SplitMix64 rng(39);
  const auto keys = random_keys(rng, 3000, 50);
  const auto items = make_items(keys);
  Sorter batched(Mode::binary, Engine::batched);
  Sorter implicit(Mode::binary, Engine::implicit);
  std::uint64_t rebuilds = 0, agreed = 0;
  for (const auto& item : items) {
    const bool fresh = batched.rebuild_count() != rebuilds;
    rebuilds = batched.rebuild_count();
    const auto a = batched.process(item);
    const auto b = implicit.process(item);
    if (fresh) {
      CHECK(a.comparisons == b.comparisons);
      ++agreed;
    }
  }
  CHECK(agreed > 3);
}

#include "doctest.h"

#include <cmath>
#include <cstdlib>
#include <numbers>

#include <boost/multiprecision/cpp_int.hpp>

#include "entrosort/analysis.hpp"
#include "entrosort/sorter.hpp"
#include "entrosort/streams.hpp"

using namespace entrosort;

namespace {

// Oracle: exact x! as a big integer, its log2 read off the top 64 bits.
long double exact_log2_factorial(std::uint64_t x) {
  boost::multiprecision::cpp_int f = 1;
  for (std::uint64_t i = 2; i <= x; ++i) f *= i;
  const auto msb = static_cast<long>(boost::multiprecision::msb(f));
  const long shift = std::max<long>(0, msb - 63);
  const auto top = static_cast<std::uint64_t>(f >> shift);
  return std::log2(static_cast<long double>(top)) + static_cast<long double>(shift);
}

struct GuardOverride {
  explicit GuardOverride(const char* value) { setenv("ENTROSORT_GUARD_BITS", value, 1); }
  ~GuardOverride() { unsetenv("ENTROSORT_GUARD_BITS"); }
};

}  // namespace

TEST_CASE("entropy examples") {
  const std::vector<std::uint64_t> a = {2, 1, 1}, b = {1, 1, 1, 1}, c = {7};
  CHECK(entropy(a) == doctest::Approx(1.5).epsilon(1e-12));
  CHECK(entropy(b) == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(entropy(c) == 0.0);
  CHECK_THROWS_AS(entropy(std::vector<std::uint64_t>{}), std::invalid_argument);
  CHECK_THROWS_AS(entropy(std::vector<std::uint64_t>{1, 0}), std::invalid_argument);
}

TEST_CASE("entropy is at most log2 sigma, with equality when uniform") {
  SplitMix64 rng(52);
  for (int trial = 0; trial < 500; ++trial) {
    std::vector<std::uint64_t> freqs(1 + rng.below(200));
    for (auto& c : freqs) c = 1 + rng.below(50);
    const double bound = std::log2(static_cast<double>(freqs.size()));
    CHECK(entropy(freqs) <= bound + 1e-12);
    std::fill(freqs.begin(), freqs.end(), freqs.front());
    CHECK(entropy(freqs) == doctest::Approx(bound).epsilon(1e-12));
  }
}

TEST_CASE("log_multinomial examples") {
  const std::vector<std::uint64_t> a = {2, 2}, b = {5}, c = {1, 1, 1};
  CHECK(log_multinomial(a) == doctest::Approx(std::log2(6.0)).epsilon(1e-12));
  CHECK(log_multinomial(b) == 0.0);
  CHECK(log_multinomial(c) == doctest::Approx(std::log2(6.0)).epsilon(1e-12));
}

TEST_CASE("log2_factorial matches lgamma") {
  for (std::uint64_t x : {0ULL, 1ULL, 2ULL, 10ULL, 1000ULL, 123456ULL, (1ULL << 20) + 5}) {
    const long double expected = std::lgamma(static_cast<long double>(x) + 1.0L) / std::numbers::ln2_v<long double>;
    CHECK(static_cast<double>(log2_factorial(x)) ==
          doctest::Approx(static_cast<double>(expected)).epsilon(1e-13));
  }
}

TEST_CASE("robbins bounds bracket log2(x!)") {
  for (std::uint64_t x = 1; x <= 2000; ++x) {
    const auto exact = exact_log2_factorial(x);
    const auto b = robbins_bounds(x);
    CHECK(b.lower < exact);
    CHECK(exact < b.upper);
    CHECK(b.upper - b.lower < 1.0L / static_cast<long double>(x * x));
  }
}

TEST_CASE("multinomial sandwich on random frequency vectors") {
  SplitMix64 rng(51);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::uint64_t sigma = 1 + rng.below(300);
    std::vector<std::uint64_t> freqs(sigma);
    const auto scale = std::uint64_t{1} << rng.below(12);
    for (auto& c : freqs) c = 1 + rng.below(scale);
    const auto s = multinomial_sandwich(freqs);
    CHECK(s.upper_ok);
    CHECK(s.lower_ok);
    CHECK(s.lower_limit <= s.log_multinomial_bits);
    CHECK(s.log_multinomial_bits <= s.upper_limit);
  }
}

TEST_CASE("bound totals for the all-equal stream") {
  const auto stats = StreamStats::from_freqs({100});
  CHECK(stats.entropy_bits == 0.0);
  CHECK(stats.log_multinomial_bits == 0.0);
  CHECK(bound_total(stats, Mode::ternary, Engine::implicit) == doctest::Approx(108.64).epsilon(1e-4));
  CHECK(bound_total(stats, Mode::binary, Engine::implicit) == doctest::Approx(209.64).epsilon(1e-4));
  CHECK(bound_total(stats, Mode::binary, Engine::rebuild_each) ==
        bound_total(stats, Mode::binary, Engine::implicit));
  const double lg = std::log2(100.0);
  CHECK(bound_total(stats, Mode::binary, Engine::batched) ==
        doctest::Approx(200.0 + batched_bound_constant * lg));
}

TEST_CASE("stream stats") {
  const std::vector<Key> keys = {Key{4}, Key{1}, Key{4}, Key{9}};
  const auto s = StreamStats::from_keys(keys);
  CHECK(s.n == 4);
  CHECK(s.sigma == 3);
  CHECK(s.freqs == std::vector<std::uint64_t>{1, 2, 1});
  CHECK(s.entropy_bits == doctest::Approx(1.5));
  CHECK(s.log_multinomial_bits == doctest::Approx(std::log2(12.0)));
}

TEST_CASE("per-step violations") {
  Transcript t;
  t.mode = Mode::ternary;
  // i=2 seen with occ 1: limit log2(1) + 1 = 1.
  t.steps = {{1, 0, 0, 0, true}, {2, 1, 1, 1, false}};
  CHECK(per_step_violations(t) == 0);
  t.steps[1].comparisons = 2;
  CHECK(per_step_violations(t) == 1);
  t.mode = Mode::binary;  // limit becomes 2
  CHECK(per_step_violations(t) == 0);
  // New key at i=5: binary limit log2(4) + 3 = 5.
  t.steps.push_back({5, 5, 0, 1, true});
  CHECK(per_step_violations(t) == 0);
  t.steps.back().comparisons = 6;
  CHECK(per_step_violations(t) == 1);
  t.steps.front().comparisons = 1;  // step 1 must be free
  CHECK(per_step_violations(t) == 2);
}

TEST_CASE("guard override from the environment") {
  // New key at i=4 in ternary mode: limit log2(3) + 1 ~ 2.585.
  Transcript t;
  t.mode = Mode::ternary;
  t.steps = {{1, 0, 0, 0, true}, {4, 3, 0, 1, true}};
  CHECK(guard_bits() == 1e-6);
  CHECK(per_step_violations(t) == 1);
  {
    GuardOverride g("0.5");
    CHECK(guard_bits() == 0.5);
    CHECK(per_step_violations(t) == 0);
  }
  {
    GuardOverride g("bogus");
    CHECK_THROWS_AS(guard_bits(), std::invalid_argument);
  }
  CHECK(guard_bits() == 1e-6);
}

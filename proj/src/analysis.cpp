#include "entrosort/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <numbers>
#include <stdexcept>
#include <string>

namespace entrosort {

namespace {

constexpr std::uint64_t kTableSize = std::uint64_t{1} << 20;

// table[x] = log2(x!) for x < kTableSize, accumulated with Kahan summation.
const std::vector<long double>& factorial_table() {
  static const std::vector<long double> table = [] {
    std::vector<long double> t(kTableSize);
    long double sum = 0, carry = 0;
    t[0] = 0;
    for (std::uint64_t x = 1; x < kTableSize; ++x) {
      const long double y = std::log2(static_cast<long double>(x)) - carry;
      const long double s = sum + y;
      carry = (s - sum) - y;
      sum = s;
      t[x] = sum;
    }
    return t;
  }();
  return table;
}

double log2_n(std::uint64_t n) { return std::log2(static_cast<double>(std::max<std::uint64_t>(n, 1))); }

void require_freqs(std::span<const std::uint64_t> freqs) {
  if (freqs.empty()) throw std::invalid_argument("empty frequency vector");
  for (auto c : freqs) {
    if (c == 0) throw std::invalid_argument("frequencies must be positive");
  }
}

}  // namespace

long double log2_factorial(std::uint64_t x) {
  const auto& table = factorial_table();
  if (x < kTableSize) return table[x];
  long double sum = table[kTableSize - 1];
  for (std::uint64_t i = kTableSize; i <= x; ++i) sum += std::log2(static_cast<long double>(i));
  return sum;
}

double entropy(std::span<const std::uint64_t> freqs) {
  require_freqs(freqs);
  long double n = 0;
  for (auto c : freqs) n += static_cast<long double>(c);
  long double h = 0;
  for (auto c : freqs) {
    const long double p = static_cast<long double>(c) / n;
    h += p * std::log2(n / static_cast<long double>(c));
  }
  return static_cast<double>(h);
}

double log_multinomial(std::span<const std::uint64_t> freqs) {
  require_freqs(freqs);
  std::uint64_t n = 0;
  long double sum = 0;
  for (auto c : freqs) {
    n += c;
    sum += log2_factorial(c);
  }
  return static_cast<double>(log2_factorial(n) - sum);
}

RobbinsBounds robbins_bounds(std::uint64_t x) {
  if (x == 0) return {};
  const long double xl = static_cast<long double>(x);
  const long double log2e = std::numbers::log2e_v<long double>;
  const long double base = 0.5L * std::log2(2.0L * std::numbers::pi_v<long double>) +
                           (xl + 0.5L) * std::log2(xl) - xl * log2e;
  return RobbinsBounds{base + log2e / (12.0L * xl + 1.0L), base + log2e / (12.0L * xl)};
}

Sandwich multinomial_sandwich(std::span<const std::uint64_t> freqs) {
  require_freqs(freqs);
  std::uint64_t n = 0;
  for (auto c : freqs) n += c;
  const double sigma = static_cast<double>(freqs.size());
  const double nd = static_cast<double>(n);
  const double nh = nd * entropy(freqs);
  Sandwich s;
  s.log_multinomial_bits = log_multinomial(freqs);
  s.upper_limit = nh + 2.0 * std::log2(nd + 1.0) + 4.0;
  s.lower_limit = nh - sigma * (std::log2(nd / sigma + 1.0) + 4.0);
  const double guard = guard_bits();
  s.upper_ok = s.log_multinomial_bits <= s.upper_limit + guard;
  s.lower_ok = s.log_multinomial_bits >= s.lower_limit - guard;
  return s;
}

StreamStats StreamStats::from_freqs(std::vector<std::uint64_t> freqs) {
  StreamStats s;
  s.freqs = std::move(freqs);
  for (auto c : s.freqs) s.n += c;
  s.sigma = s.freqs.size();
  if (!s.freqs.empty()) {
    s.entropy_bits = entropy(s.freqs);
    s.log_multinomial_bits = log_multinomial(s.freqs);
  }
  return s;
}

StreamStats StreamStats::from_keys(std::span<const Key> keys) {
  std::map<Key, std::uint64_t> counts;
  for (auto k : keys) ++counts[k];
  std::vector<std::uint64_t> freqs;
  freqs.reserve(counts.size());
  for (const auto& [k, c] : counts) freqs.push_back(c);
  return from_freqs(std::move(freqs));
}

StreamStats StreamStats::from_items(std::span<const Item> items) {
  std::vector<Key> keys;
  keys.reserve(items.size());
  for (const auto& it : items) keys.push_back(it.key);
  return from_keys(keys);
}

double bound_total(const StreamStats& stats, Mode mode, Engine engine) {
  if (stats.n == 0) return 0.0;
  const double n = static_cast<double>(stats.n);
  const double sigma = static_cast<double>(stats.sigma);
  const double lg = log2_n(stats.n);
  if (engine == Engine::batched) {
    return stats.log_multinomial_bits + 2.0 * n + batched_bound_constant * sigma * sigma * lg;
  }
  if (mode == Mode::binary) return stats.log_multinomial_bits + 2.0 * n + sigma * (lg + 3.0);
  return stats.log_multinomial_bits + n + sigma * (lg + 2.0);
}

double splay_regression_bound(const StreamStats& stats) {
  const double n = static_cast<double>(stats.n);
  return 3.0 * (stats.entropy_bits + 1.0) * n +
         4.0 * static_cast<double>(stats.sigma) * std::log2(n + 1.0) + 4.0;
}

double guard_bits() {
  if (const char* env = std::getenv("ENTROSORT_GUARD_BITS")) {
    try {
      return std::stod(env);
    } catch (const std::exception&) {
      throw std::invalid_argument(std::string("ENTROSORT_GUARD_BITS is not a number: ") + env);
    }
  }
  return 1e-6;
}

std::uint64_t per_step_violations(const Transcript& transcript) {
  const double guard = guard_bits();
  const double slack_seen = transcript.mode == Mode::binary ? 2.0 : 1.0;
  const double slack_new = transcript.mode == Mode::binary ? 3.0 : 1.0;
  std::uint64_t violations = 0;
  for (const auto& step : transcript.steps) {
    if (step.i == 1) {
      if (step.comparisons != 0) ++violations;
      continue;
    }
    const double prefix = static_cast<double>(step.i - 1);
    const double limit =
        step.is_new ? std::log2(prefix) + slack_new
                    : std::log2(prefix / static_cast<double>(step.occ_before)) + slack_seen;
    if (static_cast<double>(step.comparisons) > limit + guard) ++violations;
  }
  return violations;
}

}  // namespace entrosort

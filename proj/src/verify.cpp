#include "entrosort/verify.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

#include <boost/multiprecision/cpp_int.hpp>

#include "entrosort/analysis.hpp"
#include "entrosort/commands.hpp"
#include "entrosort/sorter.hpp"

namespace entrosort {

namespace {

// Smallest e >= 0 with w * 2^e >= total, i.e. ceil(log2(total / w)).
int ceil_log2_ratio(std::uint64_t total, std::uint64_t w) {
  int e = 0;
  while ((static_cast<unsigned __int128>(w) << e) < total) ++e;
  return e;
}

bool is_power_of_two_ratio(std::uint64_t num, std::uint64_t den) {
  return num % den == 0 && std::has_single_bit(num / den);
}

struct Recorder {
  VerifySummary& summary;

  void check(bool ok, const std::string& what) {
    ++summary.checks;
    if (ok) return;
    ++summary.failures;
    if (summary.messages.size() < 10) summary.messages.push_back(what);
  }
};

std::string describe(const std::vector<Key>& keys) {
  return "stream n=" + std::to_string(keys.size());
}

// log2 of a big integer from its top 64 bits.
long double log2_big(const boost::multiprecision::cpp_int& value) {
  const auto msb = static_cast<long>(boost::multiprecision::msb(value));
  const long shift = std::max<long>(0, msb - 63);
  const auto top = static_cast<std::uint64_t>(value >> shift);
  return std::log2(static_cast<long double>(top)) + static_cast<long double>(shift);
}

void suite_depths(const VerifyOptions& opt, VerifySummary& summary) {
  Recorder rec{summary};
  SplitMix64 rng(opt.seed);
  for (std::uint64_t t = 0; t < summary.trials; ++t) {
    const WeightDist dist(random_weights(rng, 64));
    const auto check = check_tree_depths(dist);
    rec.check(check.failures() == 0, "trial " + std::to_string(t) + ": k=" +
                                         std::to_string(dist.size()) + " total=" +
                                         std::to_string(dist.total()));
  }
}

void suite_steps(const VerifyOptions& opt, VerifySummary& summary) {
  Recorder rec{summary};
  SplitMix64 rng(opt.seed);
  for (std::uint64_t t = 0; t < summary.trials; ++t) {
    const auto keys = random_stream(rng, opt.max_n, 64);
    for (auto mode : {Mode::binary, Mode::ternary}) {
      for (auto engine : {EngineChoice::rebuild, EngineChoice::implicit}) {
        const auto out = run_sort(keys, mode, engine);
        rec.check(out.report.per_step_violations == 0,
                  describe(keys) + " " + std::string(to_string(mode)) + "/" +
                      std::string(to_string(engine)) + ": " +
                      std::to_string(out.report.per_step_violations) + " per-step violations");
      }
    }
  }
}

void suite_totals_or_stability(const VerifyOptions& opt, VerifySummary& summary, bool totals) {
  Recorder rec{summary};
  SplitMix64 rng(opt.seed);
  const std::pair<Mode, EngineChoice> cells[] = {
      {Mode::binary, EngineChoice::rebuild},   {Mode::binary, EngineChoice::implicit},
      {Mode::binary, EngineChoice::batched},   {Mode::ternary, EngineChoice::rebuild},
      {Mode::ternary, EngineChoice::implicit}, {Mode::ternary, EngineChoice::splay}};
  for (std::uint64_t t = 0; t < summary.trials; ++t) {
    const auto keys = random_stream(rng, opt.max_n, 64);
    for (const auto& [mode, engine] : cells) {
      const auto out = run_sort(keys, mode, engine);
      const std::string label = describe(keys) + " " + std::string(to_string(mode)) + "/" +
                                std::string(to_string(engine));
      if (totals) {
        rec.check(out.report.bound_satisfied,
                  label + ": total " + std::to_string(out.report.comparisons_total) + " > bound " +
                      std::to_string(out.report.bound_total));
        rec.check(out.result.transcript.total_comparisons() == out.report.comparisons_total,
                  label + ": transcript does not add up");
      } else {
        rec.check(out.report.stable, label + ": not stable");
      }
    }
  }
}

void suite_equivalence(const VerifyOptions& opt, VerifySummary& summary) {
  Recorder rec{summary};
  SplitMix64 rng(opt.seed);
  for (std::uint64_t t = 0; t < summary.trials; ++t) {
    const auto keys = random_stream(rng, opt.max_n, 128);
    for (auto mode : {Mode::binary, Mode::ternary}) {
      const auto a = run_sort(keys, mode, EngineChoice::rebuild);
      const auto b = run_sort(keys, mode, EngineChoice::implicit);
      rec.check(a.result.transcript.serialize_steps() == b.result.transcript.serialize_steps(),
                describe(keys) + " " + std::string(to_string(mode)) + ": transcripts differ");
    }
  }
}

void suite_robbins(const VerifyOptions& opt, VerifySummary& summary) {
  Recorder rec{summary};
  boost::multiprecision::cpp_int factorial = 1;
  for (std::uint64_t x = 1; x <= 2000; ++x) {
    factorial *= x;
    const long double exact = log2_big(factorial);
    const auto b = robbins_bounds(x);
    rec.check(b.lower < exact && exact < b.upper,
              "robbins_bounds does not bracket log2(" + std::to_string(x) + "!)");
  }
  SplitMix64 rng(opt.seed);
  for (std::uint64_t t = 0; t < summary.trials; ++t) {
    const std::uint64_t n = 1 + rng.below(100000);
    const std::uint64_t sigma = 1 + rng.below(std::min<std::uint64_t>(n, 1000));
    // Random composition of n into sigma positive parts.
    std::vector<std::uint64_t> freqs(sigma, 1);
    const std::uint64_t skew = rng.below(4);
    for (std::uint64_t rest = n - sigma; rest > 0; --rest) {
      std::uint64_t j = rng.below(sigma);
      for (std::uint64_t s = 0; s < skew; ++s) j = std::min(j, rng.below(sigma));
      ++freqs[j];
    }
    const auto s = multinomial_sandwich(freqs);
    rec.check(s.lower_ok && s.upper_ok, "multinomial_sandwich fails for n=" + std::to_string(n) +
                                            " sigma=" + std::to_string(sigma));
  }
}

}  // namespace

TreeDepthCheck check_tree_depths(const WeightDist& dist) {
  TreeDepthCheck out;
  const std::size_t k = dist.size();
  const std::uint64_t total = dist.total();

  const auto node_tree = build_mehlhorn_tree(dist);
  const auto nd = node_depths(node_tree);
  for (std::size_t i = 1; i <= k; ++i) {
    // depth <= log2(total / w)  <=>  w * 2^depth <= total
    if ((static_cast<unsigned __int128>(dist.weight(i)) << nd[i - 1]) > total) ++out.mehlhorn_failures;
  }
  {
    std::vector<std::size_t> order;
    std::vector<int> stack;
    int cur = node_tree.root();
    while (cur >= 0 || !stack.empty()) {
      while (cur >= 0) {
        stack.push_back(cur);
        cur = node_tree.node(cur).left;
      }
      cur = stack.back();
      stack.pop_back();
      order.push_back(node_tree.node(cur).item);
      cur = node_tree.node(cur).right;
    }
    for (std::size_t i = 0; i < order.size(); ++i) {
      if (order[i] != i + 1) ++out.structure_failures;
    }
    if (order.size() != k) ++out.structure_failures;
  }

  const auto leaf_tree = build_gm_tree(dist);
  const auto ld = leaf_depths(leaf_tree);
  const auto words = gm_codewords(dist);
  std::uint64_t w_min = dist.weight(1);
  for (std::size_t i = 1; i <= k; ++i) w_min = std::min(w_min, dist.weight(i));
  for (std::size_t leaf = 1; leaf <= 2 * k + 1; ++leaf) {
    const int depth = ld[leaf - 1];
    if (depth > static_cast<int>(words[leaf - 1].size())) ++out.structure_failures;
    if (leaf % 2 == 0) {
      const std::size_t i = leaf / 2;
      const int bound = ceil_log2_ratio(total, dist.weight(i)) + 1;
      if (depth <= bound) continue;
      if (i == k && depth == bound + 1 && is_power_of_two_ratio(2 * total, dist.weight(k))) {
        ++out.gm_dyadic_exceptions;
      } else {
        ++out.gm_even_failures;
      }
    } else if (depth > ceil_log2_ratio(total, w_min) + 2) {
      ++out.gm_odd_failures;
    }
  }
  for (std::size_t a = 0; a < words.size(); ++a) {
    for (std::size_t b = 0; b < words.size(); ++b) {
      if (a != b && words[b].starts_with(words[a])) ++out.structure_failures;
    }
    if (a > 0 && !(words[a - 1] < words[a])) ++out.structure_failures;
  }
  return out;
}

std::vector<Key> random_stream(SplitMix64& rng, std::uint64_t max_n, std::uint64_t max_sigma) {
  StreamSpec spec;
  spec.n = 1 + rng.below(max_n);
  const Dist dists[] = {Dist::uniform, Dist::zipf, Dist::equal, Dist::runs};
  spec.dist = dists[rng.below(4)];
  spec.sigma = spec.dist == Dist::equal ? 1 : 1 + rng.below(std::min(spec.n, max_sigma));
  spec.seed = rng.next();
  spec.zipf_s = 0.5 + rng.uniform01() * 1.5;
  return generate_stream(spec);
}

std::vector<std::uint64_t> random_weights(SplitMix64& rng, std::size_t max_k) {
  const std::size_t k = 1 + rng.below(max_k);
  std::vector<std::uint64_t> w(k);
  switch (rng.below(4)) {
    case 0: {
      const std::uint64_t m = 1 + rng.below(16);
      std::fill(w.begin(), w.end(), m);
      break;
    }
    case 1:
      for (auto& x : w) x = std::uint64_t{1} << rng.below(8);
      break;
    case 2:
      for (auto& x : w) x = 1 + rng.below(10);
      break;
    default:
      for (auto& x : w) x = 1 + rng.below(100000);
      break;
  }
  return w;
}

const std::vector<std::string>& verify_suites() {
  static const std::vector<std::string> names = {"depths",    "steps",       "totals",
                                                 "stability", "equivalence", "robbins"};
  return names;
}

VerifySummary run_verify(std::string_view suite, VerifyOptions options) {
  VerifySummary summary;
  summary.suite = std::string(suite);
  if (suite == "depths") {
    summary.trials = options.trials ? options.trials : 1000;
    suite_depths(options, summary);
  } else if (suite == "steps") {
    summary.trials = options.trials ? options.trials : 100;
    if (!options.max_n) options.max_n = 2000;
    suite_steps(options, summary);
  } else if (suite == "totals" || suite == "stability") {
    summary.trials = options.trials ? options.trials : 100;
    if (!options.max_n) options.max_n = 2000;
    suite_totals_or_stability(options, summary, suite == "totals");
  } else if (suite == "equivalence") {
    summary.trials = options.trials ? options.trials : 200;
    if (!options.max_n) options.max_n = 10000;
    suite_equivalence(options, summary);
  } else if (suite == "robbins") {
    summary.trials = options.trials ? options.trials : 1000;
    suite_robbins(options, summary);
  } else {
    throw std::invalid_argument("unknown suite: " + std::string(suite));
  }
  return summary;
}

}  // namespace entrosort

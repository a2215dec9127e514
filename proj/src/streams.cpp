#include "entrosort/streams.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <istream>
#include <numeric>
#include <ostream>
#include <set>
#include <sstream>

namespace entrosort {

std::uint64_t SplitMix64::below(std::uint64_t bound) {
  if (bound == 0) throw std::invalid_argument("SplitMix64::below: zero bound");
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = next();
  } while (x >= limit);
  return x % bound;
}

std::string_view to_string(Dist dist) {
  switch (dist) {
    case Dist::uniform: return "uniform";
    case Dist::zipf: return "zipf";
    case Dist::equal: return "equal";
    case Dist::runs: return "runs";
    case Dist::adversarial: return "adversarial";
  }
  return "?";
}

Dist parse_dist(std::string_view text) {
  if (text == "uniform") return Dist::uniform;
  if (text == "zipf") return Dist::zipf;
  if (text == "equal") return Dist::equal;
  if (text == "runs") return Dist::runs;
  if (text == "adversarial") return Dist::adversarial;
  throw std::invalid_argument("unknown dist: " + std::string(text));
}

namespace {

template <class T>
void shuffle(std::vector<T>& v, SplitMix64& rng) {
  for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[rng.below(i)]);
}

// Overwrites positions holding over-represented ranks until every rank in
// [0, sigma) occurs at least once.
void ensure_coverage(std::vector<std::uint64_t>& ranks, std::uint64_t sigma, SplitMix64& rng) {
  std::vector<std::uint64_t> counts(sigma, 0);
  for (auto r : ranks) ++counts[r];
  for (std::uint64_t r = 0; r < sigma; ++r) {
    if (counts[r] > 0) continue;
    while (true) {
      const std::size_t pos = rng.below(ranks.size());
      if (counts[ranks[pos]] > 1) {
        --counts[ranks[pos]];
        ranks[pos] = r;
        counts[r] = 1;
        break;
      }
    }
  }
}

}  // namespace

std::vector<Key> generate_stream(const StreamSpec& spec) {
  if (spec.dist == Dist::adversarial) {
    throw std::invalid_argument("adversarial streams are generated against a sorter");
  }
  if (spec.dist == Dist::equal) {
    if (spec.sigma > 1) throw std::invalid_argument("equal dist has exactly one distinct key");
    return std::vector<Key>(spec.n, Key{1});
  }
  if (spec.sigma > spec.n) throw std::invalid_argument("sigma exceeds n");
  if (spec.n == 0) return {};
  if (spec.sigma == 0) throw std::invalid_argument("sigma must be positive");

  SplitMix64 rng(spec.seed);
  // Rank r (0 = most frequent under zipf) maps to key perm[r] + 1.
  std::vector<std::int64_t> perm(spec.sigma);
  std::iota(perm.begin(), perm.end(), 1);
  shuffle(perm, rng);

  std::vector<std::uint64_t> ranks(spec.n);
  switch (spec.dist) {
    case Dist::uniform:
      for (auto& r : ranks) r = rng.below(spec.sigma);
      ensure_coverage(ranks, spec.sigma, rng);
      break;
    case Dist::zipf: {
      std::vector<double> cdf(spec.sigma);
      double acc = 0;
      for (std::uint64_t r = 0; r < spec.sigma; ++r) {
        acc += 1.0 / std::pow(static_cast<double>(r + 1), spec.zipf_s);
        cdf[r] = acc;
      }
      for (auto& c : cdf) c /= acc;
      for (auto& r : ranks) {
        const double u = rng.uniform01();
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        r = std::min<std::uint64_t>(static_cast<std::uint64_t>(it - cdf.begin()), spec.sigma - 1);
      }
      ensure_coverage(ranks, spec.sigma, rng);
      break;
    }
    case Dist::runs: {
      // sigma contiguous runs, one per key, cut at sigma-1 distinct points.
      std::vector<std::uint64_t> cuts(spec.n - 1);
      std::iota(cuts.begin(), cuts.end(), 1);
      for (std::uint64_t i = 0; i + 1 < spec.sigma; ++i) {
        std::swap(cuts[i], cuts[i + rng.below(cuts.size() - i)]);
      }
      cuts.resize(spec.sigma - 1);
      std::sort(cuts.begin(), cuts.end());
      cuts.push_back(spec.n);
      std::uint64_t pos = 0;
      for (std::uint64_t run = 0; run < spec.sigma; ++run) {
        for (; pos < cuts[run]; ++pos) ranks[pos] = run;
      }
      break;
    }
    default:
      break;
  }

  std::vector<Key> keys;
  keys.reserve(spec.n);
  for (auto r : ranks) keys.push_back(Key{perm[r]});
  return keys;
}

void write_stream(std::ostream& out, const StreamFile& file) {
  if (file.header) {
    out << "# n=" << file.header->n << " sigma=" << file.header->sigma
        << " dist=" << file.header->dist << " seed=" << file.header->seed << '\n';
  }
  for (auto k : file.keys) out << k.value << '\n';
}

namespace {

std::optional<std::int64_t> parse_int(std::string_view text) {
  std::int64_t value = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, value);
  if (ec != std::errc() || ptr != end) return std::nullopt;
  return value;
}

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

StreamHeader parse_header(std::string_view body, std::size_t line_no) {
  StreamHeader header;
  bool have_n = false, have_sigma = false;
  std::istringstream fields{std::string(body)};
  std::string field;
  while (fields >> field) {
    const auto eq = field.find('=');
    if (eq == std::string::npos) throw ParseError(line_no, "malformed header field '" + field + "'");
    const std::string name = field.substr(0, eq);
    const std::string value = field.substr(eq + 1);
    if (name == "dist") {
      header.dist = value;
      continue;
    }
    const auto number = parse_int(value);
    if (!number || *number < 0) throw ParseError(line_no, "bad header value '" + field + "'");
    const auto v = static_cast<std::uint64_t>(*number);
    if (name == "n") {
      header.n = v;
      have_n = true;
    } else if (name == "sigma") {
      header.sigma = v;
      have_sigma = true;
    } else if (name == "seed") {
      header.seed = v;
    } else {
      throw ParseError(line_no, "unknown header field '" + name + "'");
    }
  }
  if (!have_n || !have_sigma) throw ParseError(line_no, "header needs n= and sigma=");
  return header;
}

}  // namespace

StreamFile read_stream(std::istream& in) {
  StreamFile file;
  std::string line;
  std::size_t line_no = 0;
  std::size_t header_line = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto text = trim(line);
    if (text.empty()) continue;
    if (text.front() == '#') {
      if (file.header || !file.keys.empty()) throw ParseError(line_no, "header must be the first line");
      file.header = parse_header(text.substr(1), line_no);
      header_line = line_no;
      continue;
    }
    const auto value = parse_int(text);
    if (!value) throw ParseError(line_no, "not a decimal integer: '" + std::string(text) + "'");
    file.keys.push_back(Key{*value});
  }
  if (file.header) {
    std::set<Key> distinct(file.keys.begin(), file.keys.end());
    if (file.header->n != file.keys.size() || file.header->sigma != distinct.size()) {
      throw ParseError(header_line, "header disagrees with body (n=" + std::to_string(file.keys.size()) +
                                        " sigma=" + std::to_string(distinct.size()) + ")");
    }
  }
  return file;
}

}  // namespace entrosort

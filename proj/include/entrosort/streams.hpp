#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "entrosort/core.hpp"

namespace entrosort {

// splitmix64 (Steele, Lea, Flood), so generated streams are reproducible
// from the seed alone in any language.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
  }
  // Uniform on [0, 1) with 53 random bits.
  double uniform01() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
  // Uniform on [0, bound), rejection-sampled.
  std::uint64_t below(std::uint64_t bound);

 private:
  std::uint64_t state_;
};

enum class Dist { uniform, zipf, equal, runs, adversarial };

std::string_view to_string(Dist dist);
Dist parse_dist(std::string_view text);

struct StreamSpec {
  Dist dist = Dist::uniform;
  std::uint64_t n = 0;
  std::uint64_t sigma = 0;
  std::uint64_t seed = 0;
  double zipf_s = 1.0;
};

// Streams with exactly spec.sigma distinct keys (equal: one key).
// Adversarial streams depend on a sorter and are produced by the command
// layer instead.
std::vector<Key> generate_stream(const StreamSpec& spec);

struct StreamHeader {
  std::uint64_t n = 0;
  std::uint64_t sigma = 0;
  std::string dist;
  std::uint64_t seed = 0;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what)
      : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

struct StreamFile {
  std::optional<StreamHeader> header;
  std::vector<Key> keys;
};

void write_stream(std::ostream& out, const StreamFile& file);
// Throws ParseError on malformed lines or a header that disagrees with the
// body.
StreamFile read_stream(std::istream& in);

}  // namespace entrosort

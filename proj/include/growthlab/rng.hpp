#ifndef GROWTHLAB_RNG_HPP
#define GROWTHLAB_RNG_HPP

#include <cstdint>
#include <string_view>

namespace growthlab {

/// Counter-based deterministic generator (splitmix64). The state is a plain
/// counter advanced by a fixed odd gamma; each output is a bijective mix of
/// the counter, so substreams derived from (seed, label) never overlap in
/// practice and results are independent of call interleaving across streams.
class Rng {
 public:
  Rng(std::uint64_t seed, std::string_view stream_label);

  std::uint64_t next();

  /// Uniform value in [0, n) by rejection, n >= 1. No modulo bias.
  std::uint64_t below(std::uint64_t n);

  static std::uint64_t mix(std::uint64_t z);

 private:
  std::uint64_t counter_;
};

}  // namespace growthlab

#endif

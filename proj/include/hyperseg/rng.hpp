#pragma once

#include <cstdint>
#include <random>

namespace hyperseg {

/// Named sub-streams of a master seed. Every randomized operation draws its
/// seed from (master, stream, counter), so one CLI-level seed reproduces a
/// whole run.
enum class Stream : std::uint64_t {
  kNoise = 1,
  kDownsample = 2,
  kKmeans = 3,
  kSampledQp = 4,
  kSynth = 5,
  kGraphParams = 6,
  kHarness = 7,
};

inline std::uint64_t splitmix64(std::uint64_t& state) {
  state += 0x9E3779B97F4A7C15ULL;
  std::uint64_t z = state;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Counter-based seed splitter: deterministic, collision-resistant mixing of
/// (master, stream, counter) into an independent 64-bit sub-seed.
inline std::uint64_t sub_seed(std::uint64_t master, Stream stream, std::uint64_t counter = 0) {
  std::uint64_t state = master;
  (void)splitmix64(state);
  state ^= static_cast<std::uint64_t>(stream) * 0xD1342543DE82EF95ULL;
  (void)splitmix64(state);
  state ^= counter * 0x2545F4914F6CDD1DULL;
  return splitmix64(state);
}

inline std::mt19937_64 make_rng(std::uint64_t master, Stream stream, std::uint64_t counter = 0) {
  return std::mt19937_64(sub_seed(master, stream, counter));
}

}  // namespace hyperseg

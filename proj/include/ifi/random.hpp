#pragma once

// Seed derivation and bounded draws built only on bit-exact primitives
// (std::mt19937_64 output is fixed by the standard; the distributions are not),
// so generated instances are byte-identical across standard libraries.

#include <cstdint>
#include <random>

namespace ifi {

using Engine = std::mt19937_64;

inline std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

/// Independent stream tags. Changing these changes every generated instance.
enum class Stream : std::uint64_t {
  kPermutations = 1,
  kBlockRows = 2,
  kSampling = 3,
};

inline std::uint64_t derive_seed(std::uint64_t seed, Stream stream, std::uint64_t index = 0) {
  return splitmix64(splitmix64(seed ^ splitmix64(static_cast<std::uint64_t>(stream))) + index);
}

inline Engine make_engine(std::uint64_t seed, Stream stream, std::uint64_t index = 0) {
  return Engine(derive_seed(seed, stream, index));
}

/// Uniform value in [0, bound) by rejection; bound must be positive.
inline std::uint64_t uniform_below(Engine& eng, std::uint64_t bound) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % bound;
  std::uint64_t x;
  do {
    x = eng();
  } while (x >= limit);
  return x % bound;
}

}  // namespace ifi

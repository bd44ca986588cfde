#pragma once

#include <cstddef>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "ifi/errors.hpp"
#include "ifi/random.hpp"

namespace ifi {

/// Bijection on {0, ..., m-1} with its inverse kept alongside.
class Permutation {
 public:
  Permutation() = default;

  explicit Permutation(std::vector<std::size_t> mapping) : map_(std::move(mapping)), inv_(map_.size(), kUnset) {
    for (std::size_t i = 0; i < map_.size(); ++i) {
      const std::size_t v = map_[i];
      if (v >= map_.size() || inv_[v] != kUnset) {
        throw ParamError("not a permutation: value " + std::to_string(v) + " at position " + std::to_string(i));
      }
      inv_[v] = i;
    }
  }

  static Permutation identity(std::size_t m) {
    std::vector<std::size_t> v(m);
    std::iota(v.begin(), v.end(), std::size_t{0});
    return Permutation(std::move(v));
  }

  /// Uniform over all m! permutations (Fisher-Yates).
  static Permutation random(std::size_t m, Engine& eng) {
    std::vector<std::size_t> v(m);
    std::iota(v.begin(), v.end(), std::size_t{0});
    for (std::size_t i = m; i > 1; --i) {
      std::swap(v[i - 1], v[uniform_below(eng, i)]);
    }
    return Permutation(std::move(v));
  }

  std::size_t size() const { return map_.size(); }
  std::size_t operator[](std::size_t i) const { return map_[i]; }
  std::size_t inverse(std::size_t j) const { return inv_[j]; }
  const std::vector<std::size_t>& mapping() const { return map_; }

  friend bool operator==(const Permutation& a, const Permutation& b) { return a.map_ == b.map_; }

 private:
  static constexpr std::size_t kUnset = static_cast<std::size_t>(-1);

  std::vector<std::size_t> map_;
  std::vector<std::size_t> inv_;
};

/// K x K permutations, entry (k, l) maps block k of the first half onto block l
/// of the second half.
class PermutationGrid {
 public:
  PermutationGrid() = default;
  PermutationGrid(std::size_t blocks, std::vector<Permutation> entries) : blocks_(blocks), entries_(std::move(entries)) {
    if (entries_.size() != blocks_ * blocks_) throw ParamError("permutation grid needs K*K entries");
  }

  static PermutationGrid uniform(std::size_t blocks, std::size_t m, Engine& eng) {
    std::vector<Permutation> e;
    e.reserve(blocks * blocks);
    for (std::size_t i = 0; i < blocks * blocks; ++i) e.push_back(Permutation::random(m, eng));
    return {blocks, std::move(e)};
  }

  std::size_t blocks() const { return blocks_; }
  const Permutation& at(std::size_t k, std::size_t l) const { return entries_[k * blocks_ + l]; }
  const std::vector<Permutation>& entries() const { return entries_; }

  friend bool operator==(const PermutationGrid&, const PermutationGrid&) = default;

 private:
  std::size_t blocks_ = 0;
  std::vector<Permutation> entries_;
};

}  // namespace ifi

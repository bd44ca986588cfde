#pragma once

// Recovers hidden permutations from any indicator oracle. For each (k, l, i) the
// decoder asks about every candidate pair {k*m + i, d/2 + l*m + j}; a conforming
// oracle on a gap-passing instance says NO for exactly one j, which is perm(k,l)(i).

#include <concepts>
#include <cstddef>
#include <cstdint>
#include <vector>

#include "ifi/database.hpp"
#include "ifi/errors.hpp"
#include "ifi/hard_instance.hpp"
#include "ifi/permutation.hpp"
#include "ifi/sketch.hpp"

namespace ifi {

template <class F>
concept IndicatorOracle = requires(const F& f, const Itemset& t) {
  { f(t) } -> std::convertible_to<IndicatorAnswer>;
};

/// Forwards to another oracle and counts the queries it sees.
template <IndicatorOracle Inner>
class CountingOracle {
 public:
  explicit CountingOracle(const Inner& inner) : inner_(&inner) {}

  IndicatorAnswer operator()(const Itemset& t) const {
    ++queries_;
    return (*inner_)(t);
  }
  std::uint64_t queries() const { return queries_; }

 private:
  const Inner* inner_;
  mutable std::uint64_t queries_ = 0;
};

namespace detail {

template <IndicatorOracle Oracle>
Permutation decode_block(const Oracle& query, const BlockLayout& layout, std::size_t k, std::size_t l) {
  const std::size_t m = layout.m;
  if (m == 1) return Permutation::identity(1);

  constexpr std::size_t kNone = static_cast<std::size_t>(-1);
  std::vector<std::size_t> mapping(m, kNone);
  std::vector<std::size_t> owner(m, kNone);
  for (std::size_t i = 0; i < m; ++i) {
    std::size_t no_answers = 0;
    for (std::size_t j = 0; j < m; ++j) {
      if (query(Itemset::pair(layout.first(k, i), layout.second(l, j))) == IndicatorAnswer::kNo) {
        ++no_answers;
        mapping[i] = j;
      }
    }
    if (no_answers != 1) throw DecodeAmbiguous(k, l, i, no_answers);
    if (owner[mapping[i]] != kNone) {
      throw DecodeAmbiguous(k, l, i, 1, "target " + std::to_string(mapping[i]) + " already decoded for i = " +
                                            std::to_string(owner[mapping[i]]));
    }
    owner[mapping[i]] = i;
  }
  return Permutation(std::move(mapping));
}

}  // namespace detail

/// Decodes the permutation of a constant-epsilon instance of width d; the oracle
/// should be an indicator built at parameter 1/8.
template <IndicatorOracle Oracle>
Permutation decode_const(const Oracle& query, std::size_t d) {
  if (d < 2 || d % 2 != 0) throw ParamError("d must be even and >= 2");
  return detail::decode_block(query, BlockLayout{d, 1, d / 2}, 0, 0);
}

/// Decodes all K x K permutations of a general instance; the oracle should be an
/// indicator built at parameter eps/8.
template <IndicatorOracle Oracle>
PermutationGrid decode_general(const Oracle& query, std::size_t d, const Rational& eps) {
  const auto layout = block_layout(d, eps);
  std::vector<Permutation> entries;
  entries.reserve(layout.blocks * layout.blocks);
  for (std::size_t k = 0; k < layout.blocks; ++k) {
    for (std::size_t l = 0; l < layout.blocks; ++l) entries.push_back(detail::decode_block(query, layout, k, l));
  }
  return {layout.blocks, std::move(entries)};
}

}  // namespace ifi

#pragma once

// Hard instances that hide permutations inside itemset frequencies.
//
// Indexing is 0-based everywhere. With K = 1/eps blocks of m = eps*d/2 columns
// per half, a row generated for block k and subset S of {0..m-1} has
//
//   first half   bit k*m + j            set iff j is in S
//   second half  bit d/2 + l*m + j      set iff perm(k,l)^-1(j) is not in S   (every l)
//
// so the pair {k*m + i, d/2 + l*m + perm(k,l)(i)} can never co-occur, while any
// other cross pair {k*m + i, d/2 + l*m + j} co-occurs in a block-k row with
// probability 1/4. The constant-epsilon construction is the K = 1 case with
// m = d/2. (1-based block b and position p translate as (b-1)*m + p - 1.)

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ifi/database.hpp"
#include "ifi/errors.hpp"
#include "ifi/permutation.hpp"
#include "ifi/random.hpp"
#include "ifi/rational.hpp"

namespace ifi {

inline constexpr double kDefaultRowsConstant = 48.0;

/// Per-block row count ceil(c_n * ln(max(d, 3))): enough that every unmatched
/// pair clears the eps/8 gap with probability >= 99/100 over all pairs.
inline std::size_t default_rows_per_block(std::size_t d, double c_n = kDefaultRowsConstant) {
  const double dd = static_cast<double>(d < 3 ? 3 : d);
  return static_cast<std::size_t>(std::ceil(c_n * std::log(dd)));
}

inline Rational theoretical_co_occurrence_probability() { return {1, 4}; }

struct BlockLayout {
  std::size_t d = 0;
  std::size_t blocks = 0;  // K = 1/eps
  std::size_t m = 0;       // eps * d / 2

  std::size_t half() const { return d / 2; }
  std::size_t first(std::size_t k, std::size_t i) const { return k * m + i; }
  std::size_t second(std::size_t l, std::size_t j) const { return d / 2 + l * m + j; }
};

/// Rejects any (d, eps) for which 1/eps or eps*d/2 is not a positive integer.
inline BlockLayout block_layout(std::size_t d, const Rational& eps) {
  if (eps.num() == 0 || eps > Rational::integer(1)) throw ParamError("epsilon must lie in (0, 1], got " + eps.str());
  if (eps.num() != 1) throw ParamError("1/epsilon must be an integer, got epsilon = " + eps.str());
  const std::size_t blocks = eps.den();
  if (d == 0 || d % (2 * blocks) != 0) {
    throw ParamError("epsilon*d/2 must be a positive integer (d = " + std::to_string(d) + ", epsilon = " +
                     eps.str() + ")");
  }
  return {d, blocks, d / (2 * blocks)};
}

/// Subset of {0..m-1} with each element included by an independent fair coin.
inline BitRow random_subset(std::size_t m, Engine& eng) {
  BitRow s(m);
  auto words = s.words();
  for (std::size_t w = 0; w < words.size(); ++w) {
    std::uint64_t bits = eng();
    const std::size_t used = m - 64 * w;
    if (used < 64) bits &= (std::uint64_t{1} << used) - 1;
    words[w] = bits;
  }
  return s;
}

/// Row of width 2m: S indicator, then the image of the complement under pi.
inline BitRow make_row_const(const BitRow& s, const Permutation& pi) {
  const std::size_t m = pi.size();
  if (s.width() != m) throw DimensionError("subset width does not match permutation size");
  BitRow row(2 * m);
  for (std::size_t i = 0; i < m; ++i) {
    if (s.test(i)) {
      row.set(i);
    } else {
      row.set(m + pi[i]);
    }
  }
  return row;
}

/// Row of width 2*K*m for block k; perms_k[l] is the permutation (k, l).
inline BitRow make_row_general(std::size_t k, const BitRow& s, std::span<const Permutation> perms_k) {
  const std::size_t blocks = perms_k.size();
  const std::size_t m = s.width();
  if (k >= blocks) throw IndexOutOfRange("block index out of range");
  for (const auto& p : perms_k) {
    if (p.size() != m) throw DimensionError("permutation size does not match subset width");
  }
  const BlockLayout layout{2 * blocks * m, blocks, m};
  BitRow row(layout.d);
  for (std::size_t i = 0; i < m; ++i) {
    if (s.test(i)) {
      row.set(layout.first(k, i));
    } else {
      for (std::size_t l = 0; l < blocks; ++l) row.set(layout.second(l, perms_k[l][i]));
    }
  }
  return row;
}

struct ConstInstance {
  std::size_t d;
  std::size_t m;
  Permutation pi;
  std::size_t n;
  std::uint64_t seed;
  Database db;
};

struct GeneralInstance {
  BlockLayout layout;
  Rational epsilon;
  PermutationGrid perms;
  std::size_t n;
  std::size_t rows_per_block;
  std::uint64_t seed;
  Database db;

  std::size_t d() const { return layout.d; }
  std::size_t blocks() const { return layout.blocks; }
  std::size_t m() const { return layout.m; }
};

/// Rows are drawn from the block-0 row stream, the same stream the general
/// generator uses for block 0, so K = 1 instances coincide byte for byte.
inline ConstInstance gen_const_instance(std::size_t d, const Permutation& pi, std::size_t n, std::uint64_t seed) {
  if (d < 2 || d % 2 != 0) throw ParamError("d must be even and >= 2");
  if (pi.size() != d / 2) throw DimensionError("permutation must act on d/2 = " + std::to_string(d / 2) + " items");
  if (n < 1) throw ParamError("instance needs at least one row");
  auto eng = make_engine(seed, Stream::kBlockRows, 0);
  std::vector<BitRow> rows;
  rows.reserve(n);
  for (std::size_t r = 0; r < n; ++r) rows.push_back(make_row_const(random_subset(d / 2, eng), pi));
  return {d, d / 2, pi, n, seed, Database(d, rows)};
}

/// Deterministic instance with one row per given subset (no randomness).
inline ConstInstance const_instance_from_subsets(const Permutation& pi, std::span<const BitRow> subsets) {
  std::vector<BitRow> rows;
  rows.reserve(subsets.size());
  for (const auto& s : subsets) rows.push_back(make_row_const(s, pi));
  const std::size_t d = 2 * pi.size();
  return {d, pi.size(), pi, subsets.size(), 0, Database(d, rows)};
}

/// Rows are emitted block by block (k = 0..K-1); block k draws from its own
/// seed-derived stream, so the rows of a block do not depend on how many blocks follow.
inline GeneralInstance gen_general_instance(std::size_t d, const Rational& eps, const PermutationGrid& perms,
                                            std::size_t rows_per_block, std::uint64_t seed) {
  const auto layout = block_layout(d, eps);
  if (perms.blocks() != layout.blocks) throw ParamError("permutation grid must be K x K with K = 1/epsilon");
  for (const auto& p : perms.entries()) {
    if (p.size() != layout.m) throw ParamError("every permutation must act on m = " + std::to_string(layout.m));
  }
  if (rows_per_block < 1) throw ParamError("rows_per_block must be >= 1");

  std::vector<BitRow> rows;
  rows.reserve(layout.blocks * rows_per_block);
  for (std::size_t k = 0; k < layout.blocks; ++k) {
    const std::span<const Permutation> perms_k(perms.entries().data() + k * layout.blocks, layout.blocks);
    auto eng = make_engine(seed, Stream::kBlockRows, k);
    for (std::size_t r = 0; r < rows_per_block; ++r) {
      rows.push_back(make_row_general(k, random_subset(layout.m, eng), perms_k));
    }
  }
  return {layout, eps, perms, rows.size(), rows_per_block, seed, Database(d, rows)};
}

/// Hidden permutations for a (d, eps) layout drawn from `seed`.
inline PermutationGrid random_permutations(const BlockLayout& layout, std::uint64_t seed) {
  auto eng = make_engine(seed, Stream::kPermutations);
  return PermutationGrid::uniform(layout.blocks, layout.m, eng);
}

struct GapViolation {
  Itemset pair;
  Frequency frequency;
  bool matched;
};

struct GapReport {
  Frequency matched_max{0, 1};
  Frequency unmatched_min{1, 1};
  Rational threshold{1, 8};
  bool pass = false;
  std::uint64_t matched_pairs = 0;
  std::uint64_t unmatched_pairs = 0;
  std::vector<GapViolation> violations;
};

namespace detail {

class GapAccumulator {
 public:
  GapAccumulator(Rational threshold, std::uint64_t rows) {
    report_.threshold = threshold;
    report_.matched_max = {0, rows};
    report_.unmatched_min = {rows, rows};
  }

  void matched(std::size_t a, std::size_t b, Frequency f) {
    ++report_.matched_pairs;
    if (f > report_.matched_max) report_.matched_max = f;
    if (f.count != 0) report_.violations.push_back({Itemset::pair(a, b), f, true});
  }
  void unmatched(std::size_t a, std::size_t b, Frequency f) {
    ++report_.unmatched_pairs;
    if (f < report_.unmatched_min) report_.unmatched_min = f;
    if (f < report_.threshold) report_.violations.push_back({Itemset::pair(a, b), f, false});
  }

  GapReport finish() {
    report_.pass = report_.matched_max.count == 0 && report_.unmatched_min >= report_.threshold;
    return std::move(report_);
  }

 private:
  GapReport report_;
};

}  // namespace detail

/// Audits every pair of columns: matched pairs {i, m + pi(i)} must have frequency
/// exactly 0, every other pair must reach 1/8.
inline GapReport verify_gap(const ConstInstance& inst) {
  const ColumnIndex cols(inst.db);
  detail::GapAccumulator acc(Rational(1, 8), inst.n);
  for (std::size_t a = 0; a < inst.d; ++a) {
    for (std::size_t b = a + 1; b < inst.d; ++b) {
      const bool is_matched = a < inst.m && b >= inst.m && b - inst.m == inst.pi[a];
      if (is_matched) {
        acc.matched(a, b, cols.pair_frequency(a, b));
      } else {
        acc.unmatched(a, b, cols.pair_frequency(a, b));
      }
    }
  }
  return acc.finish();
}

/// Audits the K^2 m^2 decoder pairs {k*m + i, d/2 + l*m + j} against eps/8.
inline GapReport verify_gap(const GeneralInstance& inst) {
  const ColumnIndex cols(inst.db);
  const auto& L = inst.layout;
  detail::GapAccumulator acc(inst.epsilon.scaled(1, 8), inst.n);
  for (std::size_t k = 0; k < L.blocks; ++k) {
    for (std::size_t l = 0; l < L.blocks; ++l) {
      const auto& p = inst.perms.at(k, l);
      for (std::size_t i = 0; i < L.m; ++i) {
        for (std::size_t j = 0; j < L.m; ++j) {
          const std::size_t a = L.first(k, i);
          const std::size_t b = L.second(l, j);
          if (p[i] == j) {
            acc.matched(a, b, cols.pair_frequency(a, b));
          } else {
            acc.unmatched(a, b, cols.pair_frequency(a, b));
          }
        }
      }
    }
  }
  return acc.finish();
}

struct StructuralScan {
  std::uint64_t checks = 0;
  std::uint64_t violations = 0;
};

/// Row-by-row check that no matched pair ever co-occurs.
inline StructuralScan scan_structural_zero(const GeneralInstance& inst) {
  StructuralScan scan;
  const auto& L = inst.layout;
  for (std::size_t r = 0; r < inst.db.n(); ++r) {
    for (std::size_t k = 0; k < L.blocks; ++k) {
      for (std::size_t l = 0; l < L.blocks; ++l) {
        const auto& p = inst.perms.at(k, l);
        for (std::size_t i = 0; i < L.m; ++i) {
          ++scan.checks;
          if (inst.db.test(r, L.first(k, i)) && inst.db.test(r, L.second(l, p[i]))) ++scan.violations;
        }
      }
    }
  }
  return scan;
}

inline StructuralScan scan_structural_zero(const ConstInstance& inst) {
  StructuralScan scan;
  for (std::size_t r = 0; r < inst.db.n(); ++r) {
    for (std::size_t i = 0; i < inst.m; ++i) {
      ++scan.checks;
      if (inst.db.test(r, i) && inst.db.test(r, inst.m + inst.pi[i])) ++scan.violations;
    }
  }
  return scan;
}

/// Fraction of `samples` random subsets S whose row contains both i and m + j.
inline double empirical_co_occurrence(const Permutation& pi, std::size_t i, std::size_t j, std::size_t samples,
                                      std::uint64_t seed) {
  const std::size_t m = pi.size();
  if (i >= m || j >= m) throw IndexOutOfRange("pair index out of range");
  auto eng = make_engine(seed, Stream::kBlockRows, 0);
  std::size_t hits = 0;
  for (std::size_t r = 0; r < samples; ++r) {
    const auto row = make_row_const(random_subset(m, eng), pi);
    hits += (row.test(i) && row.test(m + j)) ? 1 : 0;
  }
  return samples == 0 ? 0.0 : static_cast<double>(hits) / static_cast<double>(samples);
}

}  // namespace ifi

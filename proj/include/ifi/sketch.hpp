#pragma once

// Itemset-Frequency-Indicator sketches.
//
// A sketch built with parameter eps must answer YES for every itemset with
// f >= eps and NO for every itemset with f <= eps/2; anything strictly between
// is unconstrained. Two reference constructions are provided:
//
//   sampling     s rows drawn uniformly with replacement, s = ceil(C_s/eps * ln(4 d^k)).
//                Answers YES iff the empirical frequency is >= 3eps/4. Correct for
//                every query whenever all empirical frequencies land within eps/4 of
//                the truth, which the row count makes happen with probability >= 3/4.
//   exact pairs  one bit per pair {a, b}: f > eps/2. Deterministic, d(d-1)/2 bits.

#include <cmath>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ifi/database.hpp"
#include "ifi/errors.hpp"
#include "ifi/random.hpp"
#include "ifi/rational.hpp"

namespace ifi {

enum class SketchKind : std::uint8_t { kSampling = 0, kExactPairs = 1 };
enum class IndicatorAnswer : std::uint8_t { kNo = 0, kYes = 1 };

inline const char* to_string(SketchKind kind) {
  return kind == SketchKind::kSampling ? "sampling" : "exact";
}
inline const char* to_string(IndicatorAnswer a) { return a == IndicatorAnswer::kYes ? "YES" : "NO"; }

inline constexpr double kDefaultSamplingConstant = 48.0;

struct SketchParams {
  Rational epsilon{1, 8};
  unsigned k = 2;
  std::size_t d = 2;
  // Probability the build may fail; only the sampling sketch is randomized.
  Rational build_failure_budget{1, 4};

  void validate() const {
    if (epsilon.num() == 0 || epsilon > Rational::integer(1)) {
      throw ParamError("sketch epsilon must lie in (0, 1], got " + epsilon.str());
    }
    if (k < 1) throw ParamError("sketch arity k must be >= 1");
    if (d < 2) throw ParamError("sketch needs d >= 2");
  }

  friend bool operator==(const SketchParams&, const SketchParams&) = default;
};

struct SketchBlob {
  SketchKind kind = SketchKind::kExactPairs;
  SketchParams params;
  std::vector<std::uint8_t> payload;
  // Information content of the payload only; no framing.
  std::uint64_t size_bits = 0;

  friend bool operator==(const SketchBlob&, const SketchBlob&) = default;
};

inline std::uint64_t sketch_size_bits(const SketchBlob& blob) { return blob.size_bits; }

/// Number of rows the sampling sketch draws: ceil(c_s / eps * ln(4 d^k)).
inline std::uint64_t sampling_row_count(const SketchParams& params, double c_s = kDefaultSamplingConstant) {
  params.validate();
  const double log_queries = std::log(4.0) + params.k * std::log(static_cast<double>(params.d));
  const double s = c_s * static_cast<double>(params.epsilon.den()) / static_cast<double>(params.epsilon.num()) *
                   log_queries;
  return static_cast<std::uint64_t>(std::ceil(s));
}

/// Bit slot of pair {a, b}, a < b, in the row-major upper triangle of a d x d matrix.
inline std::uint64_t pair_slot(std::size_t a, std::size_t b, std::size_t d) {
  return static_cast<std::uint64_t>(a) * d - static_cast<std::uint64_t>(a) * (a + 1) / 2 + (b - a - 1);
}

namespace detail {

inline void check_query(const SketchBlob& blob, SketchKind expected, const Itemset& t) {
  if (blob.kind != expected) {
    throw WrongKind(std::string("expected a ") + to_string(expected) + " sketch, got " + to_string(blob.kind));
  }
  if (t.size() != blob.params.k) {
    throw ArityMismatch("itemset has " + std::to_string(t.size()) + " items, sketch answers k = " +
                        std::to_string(blob.params.k));
  }
  if (!t.empty() && t.items().back() >= blob.params.d) {
    throw IndexOutOfRange("itemset index " + std::to_string(t.items().back()) + " >= d");
  }
}

inline std::size_t row_bytes(std::size_t d) { return (d + 7) / 8; }

inline bool payload_bit(const std::vector<std::uint8_t>& payload, std::uint64_t bit) {
  return (payload[bit / 8] >> (bit % 8)) & 1U;
}

/// YES iff count / s >= 3 eps / 4.
inline IndicatorAnswer sampling_decision(std::uint64_t count, std::uint64_t s, const Rational& eps) {
  using u128 = unsigned __int128;
  return static_cast<u128>(4) * eps.den() * count >= static_cast<u128>(3) * eps.num() * s ? IndicatorAnswer::kYes
                                                                                         : IndicatorAnswer::kNo;
}

}  // namespace detail

inline SketchBlob build_sampling(const Database& db, const SketchParams& params, std::uint64_t seed,
                                 double c_s = kDefaultSamplingConstant) {
  params.validate();
  if (params.d != db.d()) throw DimensionError("sketch d does not match database d");
  const std::uint64_t s = sampling_row_count(params, c_s);
  const std::size_t rb = detail::row_bytes(db.d());

  SketchBlob blob;
  blob.kind = SketchKind::kSampling;
  blob.params = params;
  blob.size_bits = s * db.d();
  blob.payload.resize(s * rb);

  auto eng = make_engine(seed, Stream::kSampling);
  for (std::uint64_t r = 0; r < s; ++r) {
    const auto words = db.row_words(uniform_below(eng, db.n()));
    for (std::size_t b = 0; b < rb; ++b) {
      blob.payload[r * rb + b] = static_cast<std::uint8_t>(words[b / 8] >> (8 * (b % 8)));
    }
  }
  return blob;
}

inline std::uint64_t sampled_rows(const SketchBlob& blob) {
  return blob.params.d == 0 ? 0 : blob.size_bits / blob.params.d;
}

inline IndicatorAnswer query_sampling(const SketchBlob& blob, const Itemset& t) {
  detail::check_query(blob, SketchKind::kSampling, t);
  const std::uint64_t s = sampled_rows(blob);
  const std::size_t rb = detail::row_bytes(blob.params.d);
  std::uint64_t hits = 0;
  for (std::uint64_t r = 0; r < s; ++r) {
    bool all = true;
    for (auto j : t) {
      if (!detail::payload_bit(blob.payload, r * rb * 8 + j)) {
        all = false;
        break;
      }
    }
    hits += all ? 1 : 0;
  }
  return detail::sampling_decision(hits, s, blob.params.epsilon);
}

inline SketchBlob build_exact_pairs(const ColumnIndex& columns, const SketchParams& params) {
  params.validate();
  if (params.k != 2) throw UnsupportedArity("exact-pairs sketch only answers k = 2");
  if (params.d != columns.d()) throw DimensionError("sketch d does not match database d");
  const std::size_t d = columns.d();
  const Rational half_eps = params.epsilon.scaled(1, 2);

  SketchBlob blob;
  blob.kind = SketchKind::kExactPairs;
  blob.params = params;
  blob.size_bits = static_cast<std::uint64_t>(d) * (d - 1) / 2;
  blob.payload.assign((blob.size_bits + 7) / 8, 0);
  std::uint64_t slot = 0;
  for (std::size_t a = 0; a < d; ++a) {
    for (std::size_t b = a + 1; b < d; ++b, ++slot) {
      if (columns.pair_frequency(a, b) > half_eps) {
        blob.payload[slot / 8] |= static_cast<std::uint8_t>(1U << (slot % 8));
      }
    }
  }
  return blob;
}

inline SketchBlob build_exact_pairs(const Database& db, const SketchParams& params) {
  params.validate();
  if (params.k != 2) throw UnsupportedArity("exact-pairs sketch only answers k = 2");
  return build_exact_pairs(ColumnIndex(db), params);
}

inline IndicatorAnswer query_exact(const SketchBlob& blob, const Itemset& t) {
  detail::check_query(blob, SketchKind::kExactPairs, t);
  return detail::payload_bit(blob.payload, pair_slot(t[0], t[1], blob.params.d)) ? IndicatorAnswer::kYes
                                                                                 : IndicatorAnswer::kNo;
}

inline IndicatorAnswer query(const SketchBlob& blob, const Itemset& t) {
  return blob.kind == SketchKind::kSampling ? query_sampling(blob, t) : query_exact(blob, t);
}

/// Read-only query front end over a blob. For sampling sketches the sample is
/// transposed once so pair queries cost a popcount scan instead of a row walk.
/// Answers are identical to `query(blob, t)`.
class SketchOracle {
 public:
  explicit SketchOracle(const SketchBlob& blob) : blob_(&blob) {
    if (blob.kind == SketchKind::kSampling && sampled_rows(blob) > 0) {
      const std::size_t d = blob.params.d;
      const std::size_t rb = detail::row_bytes(d);
      std::vector<BitRow> rows;
      rows.reserve(sampled_rows(blob));
      for (std::uint64_t r = 0; r < sampled_rows(blob); ++r) {
        BitRow row(d);
        for (std::size_t b = 0; b < rb; ++b) {
          row.words()[b / 8] |= std::uint64_t{blob.payload[r * rb + b]} << (8 * (b % 8));
        }
        rows.push_back(std::move(row));
      }
      sample_columns_.emplace(Database(d, rows));
    }
  }

  IndicatorAnswer operator()(const Itemset& t) const {
    if (blob_->kind == SketchKind::kSampling && sample_columns_ && t.size() == 2) {
      detail::check_query(*blob_, SketchKind::kSampling, t);
      return detail::sampling_decision(sample_columns_->count(t[0], t[1]), sample_columns_->n(),
                                       blob_->params.epsilon);
    }
    return query(*blob_, t);
  }

  const SketchBlob& blob() const { return *blob_; }

 private:
  const SketchBlob* blob_;
  std::optional<ColumnIndex> sample_columns_;
};

}  // namespace ifi

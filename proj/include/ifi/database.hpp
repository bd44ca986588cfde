#pragma once

#include <algorithm>
#include <bit>
#include <cassert>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "ifi/errors.hpp"
#include "ifi/rational.hpp"

namespace ifi {

inline constexpr std::size_t words_for(std::size_t bits) { return (bits + 63) / 64; }

/// Fixed-width bit vector, word-packed with bit j at word j/64, position j%64.
class BitRow {
 public:
  BitRow() = default;
  explicit BitRow(std::size_t width) : width_(width), words_(words_for(width), 0) {}

  /// Builds from a string of '0'/'1' characters, column 0 first ("1001").
  static BitRow from_string(std::string_view bits) {
    BitRow row(bits.size());
    for (std::size_t j = 0; j < bits.size(); ++j) {
      if (bits[j] == '1') {
        row.set(j);
      } else if (bits[j] != '0') {
        throw ParamError("bit string may only contain 0 and 1");
      }
    }
    return row;
  }

  std::size_t width() const { return width_; }

  bool test(std::size_t j) const {
    assert(j < width_);
    return (words_[j >> 6] >> (j & 63)) & 1U;
  }
  void set(std::size_t j, bool value = true) {
    assert(j < width_);
    const std::uint64_t mask = std::uint64_t{1} << (j & 63);
    if (value) {
      words_[j >> 6] |= mask;
    } else {
      words_[j >> 6] &= ~mask;
    }
  }

  std::size_t count() const {
    std::size_t c = 0;
    for (auto w : words_) c += static_cast<std::size_t>(std::popcount(w));
    return c;
  }

  std::span<const std::uint64_t> words() const { return words_; }
  std::span<std::uint64_t> words() { return words_; }

  std::string str() const {
    std::string out(width_, '0');
    for (std::size_t j = 0; j < width_; ++j) {
      if (test(j)) out[j] = '1';
    }
    return out;
  }

  friend bool operator==(const BitRow&, const BitRow&) = default;

 private:
  std::size_t width_ = 0;
  std::vector<std::uint64_t> words_;
};

/// Sorted set of distinct column indices.
class Itemset {
 public:
  Itemset() = default;

  /// Accepts indices in any order; duplicates are rejected.
  explicit Itemset(std::vector<std::size_t> items) : items_(std::move(items)) {
    std::sort(items_.begin(), items_.end());
    if (std::adjacent_find(items_.begin(), items_.end()) != items_.end()) {
      throw ParamError("itemset contains a repeated index");
    }
  }
  Itemset(std::initializer_list<std::size_t> items) : Itemset(std::vector<std::size_t>(items)) {}

  static Itemset pair(std::size_t a, std::size_t b) { return Itemset({a, b}); }

  std::size_t size() const { return items_.size(); }
  bool empty() const { return items_.empty(); }
  std::size_t operator[](std::size_t i) const { return items_[i]; }
  std::span<const std::size_t> items() const { return items_; }
  auto begin() const { return items_.begin(); }
  auto end() const { return items_.end(); }

  bool subset_of(const Itemset& other) const {
    return std::includes(other.items_.begin(), other.items_.end(), items_.begin(), items_.end());
  }

  friend bool operator==(const Itemset&, const Itemset&) = default;

 private:
  std::vector<std::size_t> items_;
};

/// Exact itemset frequency count/n. Comparisons against thresholds never round.
struct Frequency {
  std::uint64_t count = 0;
  std::uint64_t rows = 1;

  Rational value() const { return {count, rows}; }
  double to_double() const { return static_cast<double>(count) / static_cast<double>(rows); }

  friend bool operator==(const Frequency& a, const Frequency& b) {
    return Rational::compare_fractions(a.count, a.rows, b.count, b.rows) == 0;
  }
  friend std::strong_ordering operator<=>(const Frequency& a, const Frequency& b) {
    return Rational::compare_fractions(a.count, a.rows, b.count, b.rows);
  }
  friend bool operator==(const Frequency& a, const Rational& r) {
    return Rational::compare_fractions(a.count, a.rows, r.num(), r.den()) == 0;
  }
  friend std::strong_ordering operator<=>(const Frequency& a, const Rational& r) {
    return Rational::compare_fractions(a.count, a.rows, r.num(), r.den());
  }
};

/// Immutable n x d bit matrix of transactions.
class Database {
 public:
  Database(std::size_t d, std::span<const BitRow> rows) : n_(rows.size()), d_(d), stride_(words_for(d)) {
    if (n_ < 1) throw DimensionError("database needs at least one row");
    if (d_ < 2) throw DimensionError("database needs at least two columns");
    bits_.reserve(n_ * stride_);
    for (const auto& row : rows) {
      if (row.width() != d_) {
        throw DimensionError("row width " + std::to_string(row.width()) + " != d = " + std::to_string(d_));
      }
      bits_.insert(bits_.end(), row.words().begin(), row.words().end());
    }
  }
  Database(std::size_t d, std::initializer_list<BitRow> rows) : Database(d, std::span(rows.begin(), rows.size())) {}

  /// Rows given as '0'/'1' strings of equal length.
  static Database from_strings(std::initializer_list<std::string_view> rows) {
    std::vector<BitRow> parsed;
    for (auto r : rows) parsed.push_back(BitRow::from_string(r));
    return Database(parsed.empty() ? 0 : parsed.front().width(), parsed);
  }

  std::size_t n() const { return n_; }
  std::size_t d() const { return d_; }

  std::span<const std::uint64_t> row_words(std::size_t i) const {
    return std::span(bits_).subspan(i * stride_, stride_);
  }
  bool test(std::size_t i, std::size_t j) const {
    return (bits_[i * stride_ + (j >> 6)] >> (j & 63)) & 1U;
  }
  BitRow row(std::size_t i) const {
    BitRow r(d_);
    std::copy_n(bits_.begin() + static_cast<std::ptrdiff_t>(i * stride_), stride_, r.words().begin());
    return r;
  }

  friend bool operator==(const Database&, const Database&) = default;

 private:
  std::size_t n_;
  std::size_t d_;
  std::size_t stride_;
  std::vector<std::uint64_t> bits_;
};

inline void check_itemset(const Database& db, const Itemset& t) {
  if (!t.empty() && t.items().back() >= db.d()) {
    throw IndexOutOfRange("itemset index " + std::to_string(t.items().back()) + " >= d = " +
                          std::to_string(db.d()));
  }
}

/// Fraction of rows containing every item of t. The empty itemset has frequency 1.
inline Frequency frequency(const Database& db, const Itemset& t) {
  check_itemset(db, t);
  std::uint64_t hits = 0;
  for (std::size_t i = 0; i < db.n(); ++i) {
    const bool all = std::all_of(t.begin(), t.end(), [&](std::size_t j) { return db.test(i, j); });
    hits += all ? 1 : 0;
  }
  return {hits, db.n()};
}

/// Column-major transpose of a database for fast pair counts via popcount.
/// Agrees with `frequency` on every singleton and pair.
class ColumnIndex {
 public:
  explicit ColumnIndex(const Database& db) : n_(db.n()), d_(db.d()), stride_(words_for(db.n())) {
    columns_.assign(d_ * stride_, 0);
    for (std::size_t i = 0; i < n_; ++i) {
      const auto row = db.row_words(i);
      for (std::size_t w = 0; w < row.size(); ++w) {
        for (std::uint64_t bits = row[w]; bits != 0; bits &= bits - 1) {
          const std::size_t j = w * 64 + static_cast<std::size_t>(std::countr_zero(bits));
          columns_[j * stride_ + (i >> 6)] |= std::uint64_t{1} << (i & 63);
        }
      }
    }
  }

  std::size_t n() const { return n_; }
  std::size_t d() const { return d_; }

  std::uint64_t count(std::size_t j) const {
    std::uint64_t c = 0;
    for (auto w : column(j)) c += static_cast<std::uint64_t>(std::popcount(w));
    return c;
  }
  std::uint64_t count(std::size_t a, std::size_t b) const {
    const auto ca = column(a);
    const auto cb = column(b);
    std::uint64_t c = 0;
    for (std::size_t w = 0; w < stride_; ++w) c += static_cast<std::uint64_t>(std::popcount(ca[w] & cb[w]));
    return c;
  }
  Frequency pair_frequency(std::size_t a, std::size_t b) const { return {count(a, b), n_}; }

 private:
  std::span<const std::uint64_t> column(std::size_t j) const {
    assert(j < d_);
    return std::span(columns_).subspan(j * stride_, stride_);
  }

  std::size_t n_;
  std::size_t d_;
  std::size_t stride_;
  std::vector<std::uint64_t> columns_;
};

}  // namespace ifi

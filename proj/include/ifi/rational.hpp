#pragma once

#include <charconv>
#include <compare>
#include <cstdint>
#include <numeric>
#include <ostream>
#include <string>
#include <string_view>

#include "ifi/errors.hpp"

namespace ifi {

/// Non-negative exact fraction, always stored in lowest terms.
///
/// Every threshold comparison in the library goes through cross-multiplication
/// in 128-bit arithmetic, so the boundary between "frequent" and "rare" is never
/// subject to rounding.
class Rational {
 public:
  constexpr Rational() = default;

  Rational(std::uint64_t num, std::uint64_t den) : num_(num), den_(den) {
    if (den_ == 0) throw ParamError("rational with zero denominator");
    const std::uint64_t g = std::gcd(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
  }

  static Rational integer(std::uint64_t v) { return {v, 1}; }

  /// Parses "p/q" (or a bare integer "p"). Decimal points and signs are rejected.
  static Rational parse(std::string_view text) {
    const auto slash = text.find('/');
    const auto num = parse_u64(text.substr(0, slash), text);
    const std::uint64_t den = slash == std::string_view::npos ? 1 : parse_u64(text.substr(slash + 1), text);
    if (den == 0) throw ParamError("zero denominator in fraction '" + std::string(text) + "'");
    return {num, den};
  }

  constexpr std::uint64_t num() const { return num_; }
  constexpr std::uint64_t den() const { return den_; }

  bool is_integer() const { return den_ == 1; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  /// this * a / b, exact. Throws if the result does not fit in 64 bits.
  Rational scaled(std::uint64_t a, std::uint64_t b) const {
    using u128 = unsigned __int128;
    u128 n = static_cast<u128>(num_) * a;
    u128 d = static_cast<u128>(den_) * b;
    const u128 g = gcd128(n, d);
    n /= g;
    d /= g;
    if (n > UINT64_MAX || d > UINT64_MAX) throw ParamError("rational overflow");
    return {static_cast<std::uint64_t>(n), static_cast<std::uint64_t>(d)};
  }

  std::string str() const { return std::to_string(num_) + "/" + std::to_string(den_); }

  friend bool operator==(const Rational&, const Rational&) = default;
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return compare_fractions(a.num_, a.den_, b.num_, b.den_);
  }
  friend std::ostream& operator<<(std::ostream& os, const Rational& r) { return os << r.str(); }

  /// a/b <=> c/d without normalizing either side.
  static std::strong_ordering compare_fractions(std::uint64_t a, std::uint64_t b, std::uint64_t c,
                                                std::uint64_t d) {
    using u128 = unsigned __int128;
    return static_cast<u128>(a) * d <=> static_cast<u128>(c) * b;
  }

 private:
  static std::uint64_t parse_u64(std::string_view part, std::string_view whole) {
    std::uint64_t v = 0;
    const auto* first = part.data();
    const auto* last = part.data() + part.size();
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (part.empty() || ec != std::errc{} || ptr != last) {
      throw ParamError("expected an exact fraction p/q, got '" + std::string(whole) + "'");
    }
    return v;
  }

  static unsigned __int128 gcd128(unsigned __int128 a, unsigned __int128 b) {
    while (b != 0) {
      const auto t = a % b;
      a = b;
      b = t;
    }
    return a == 0 ? 1 : a;
  }

  std::uint64_t num_ = 0;
  std::uint64_t den_ = 1;
};

}  // namespace ifi

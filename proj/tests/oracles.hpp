#pragma once

// Reference computations for the tests. Each one takes the slow, literal route
// (per-bit loops, explicit unit-vector sums, big-integer factorials) and shares
// no code with the library paths it checks.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "ifi/database.hpp"
#include "ifi/permutation.hpp"

namespace oracle {

using Matrix = std::vector<std::vector<int>>;

inline Matrix to_matrix(const ifi::Database& db) {
  Matrix out(db.n(), std::vector<int>(db.d()));
  for (std::size_t i = 0; i < db.n(); ++i) {
    const auto row = db.row(i).str();
    for (std::size_t j = 0; j < db.d(); ++j) out[i][j] = row[j] == '1';
  }
  return out;
}

/// Number of rows where every listed column is 1.
inline std::uint64_t count(const Matrix& rows, const std::vector<std::size_t>& cols) {
  std::uint64_t c = 0;
  for (const auto& r : rows) {
    int all = 1;
    for (auto j : cols) all &= r[j];
    c += all;
  }
  return c;
}

/// hits/n > p/q for the small magnitudes used in tests.
inline bool exceeds(std::uint64_t hits, std::uint64_t n, std::uint64_t p, std::uint64_t q) {
  return hits * q > p * n;
}

/// Random database with each bit set with probability `density`.
inline ifi::Database random_db(std::size_t n, std::size_t d, std::uint64_t seed, double density = 0.5) {
  std::mt19937_64 gen(seed);
  std::bernoulli_distribution bit(density);
  std::vector<ifi::BitRow> rows;
  for (std::size_t i = 0; i < n; ++i) {
    ifi::BitRow r(d);
    for (std::size_t j = 0; j < d; ++j) r.set(j, bit(gen));
    rows.push_back(std::move(r));
  }
  return ifi::Database(d, rows);
}

/// v_S = (sum over i in S of e_i) concatenated with (sum over i not in S of e_pi(i)).
inline std::vector<int> v_s(const std::vector<int>& in_s, const std::vector<std::size_t>& pi) {
  const std::size_t m = pi.size();
  std::vector<int> first(m, 0);
  std::vector<int> second(m, 0);
  for (std::size_t i = 0; i < m; ++i) {
    std::vector<int> e(m, 0);
    if (in_s[i]) {
      e[i] = 1;
      for (std::size_t t = 0; t < m; ++t) first[t] += e[t];
    } else {
      e[pi[i]] = 1;
      for (std::size_t t = 0; t < m; ++t) second[t] += e[t];
    }
  }
  first.insert(first.end(), second.begin(), second.end());
  return first;
}

/// v_{k,S} for 0-based block k: u^{k,S} then one complement image per target block.
inline std::vector<int> v_ks(std::size_t k, const std::vector<int>& in_s,
                             const std::vector<std::vector<std::size_t>>& perms_k) {
  const std::size_t blocks = perms_k.size();
  const std::size_t m = in_s.size();
  std::vector<int> row(2 * blocks * m, 0);
  for (std::size_t j = 0; j < m; ++j) row[k * m + j] = in_s[j];
  for (std::size_t l = 0; l < blocks; ++l) {
    for (std::size_t i = 0; i < m; ++i) {
      if (!in_s[i]) row[blocks * m + l * m + perms_k[l][i]] += 1;
    }
  }
  return row;
}

/// log2(m!) from the exact big-integer factorial: bit length plus the mantissa
/// of the leading 64 bits.
inline double log2_factorial_bigint(unsigned m) {
  boost::multiprecision::cpp_int f = 1;
  for (unsigned i = 2; i <= m; ++i) f *= i;
  const std::size_t bits = boost::multiprecision::msb(f) + 1;
  const std::size_t shift = bits > 64 ? bits - 64 : 0;
  const auto top = static_cast<std::uint64_t>(f >> shift);
  return std::log2(static_cast<long double>(top)) + static_cast<double>(shift);
}

}  // namespace oracle

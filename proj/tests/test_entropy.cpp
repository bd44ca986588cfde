#include <cmath>

#include <gtest/gtest.h>

#include "ifi/entropy.hpp"
#include "oracles.hpp"

using ifi::Rational;

TEST(Entropy, SingleItemBlocksCarryNothing) { EXPECT_EQ(ifi::entropy_bits(16, Rational(1, 8)), 0.0); }

TEST(Entropy, SixteenColumnsHalfEpsilon) {
  // m = 4, K = 2: 4 * log2(4!) = 18.3398500028846...
  EXPECT_NEAR(ifi::entropy_bits(16, Rational(1, 2)), 4 * oracle::log2_factorial_bigint(4), 1e-9);
  EXPECT_NEAR(ifi::entropy_bits(16, Rational(1, 2)), 18.339850002884624, 1e-9);
}

TEST(Entropy, SixtyFourColumnsQuarterEpsilon) {
  EXPECT_NEAR(ifi::entropy_bits(64, Rational(1, 4)), 244.78732829419647, 1e-9);
}

TEST(Entropy, EpsilonOneIsLogFactorial) {
  for (unsigned m = 1; m <= 20; ++m) {
    const double expected = oracle::log2_factorial_bigint(m);
    EXPECT_NEAR(ifi::entropy_bits(2 * m, Rational(1, 1)), expected, 1e-9) << "m=" << m;
  }
}

TEST(Entropy, RelativeErrorAgainstBigInteger) {
  for (unsigned m : {50u, 500u, 3000u}) {
    const double exact = oracle::log2_factorial_bigint(m);
    EXPECT_LE(std::abs(ifi::log2_factorial(m) - exact) / exact, 1e-9) << "m=" << m;
  }
}

TEST(Entropy, RelativeErrorAtOneMillion) {
  // lgamma is an independent route at this size; its own error is ~1e-15 relative.
  const double ref = std::lgamma(1e6 + 1) / std::log(2.0);
  EXPECT_LE(std::abs(ifi::log2_factorial(1000000) - ref) / ref, 1e-9);
}

TEST(Entropy, MonotoneInDimension) {
  double prev = 0.0;
  for (std::size_t d = 8; d <= 512; d += 8) {
    const double e = ifi::entropy_bits(d, Rational(1, 4));
    EXPECT_GE(e, prev);
    prev = e;
  }
}

TEST(Entropy, RejectsNonIntegralLayout) {
  EXPECT_THROW(ifi::entropy_bits(15, Rational(1, 4)), ifi::ParamError);
  EXPECT_THROW(ifi::entropy_bits(16, Rational(1, 32)), ifi::ParamError);
}

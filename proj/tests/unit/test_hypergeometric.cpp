#include "logometre/error.hpp"
#include "logometre/hypergeometric.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace logometre;

TEST(Hypergeometric, PmfSumsToOne) {
  for (std::uint64_t T : {1u, 7u, 30u, 200u}) {
    for (std::uint64_t F = 0; F <= T; F += 1 + T / 7) {
      for (std::uint64_t t = 0; t <= T; t += 1 + T / 5) {
        double sum = 0;
        const std::uint64_t lo = t + F > T ? t + F - T : 0;
        for (std::uint64_t i = lo; i <= std::min(F, t); ++i) sum += std::exp(hypergeometric_log_pmf(T, F, t, i));
        EXPECT_NEAR(sum, 1.0, 1e-12) << T << ' ' << F << ' ' << t;
      }
    }
  }
}

TEST(Hypergeometric, TailsOutsideSupport) {
  EXPECT_EQ(hypergeometric_log_upper_tail(10, 3, 4, 4), -INFINITY);
  EXPECT_EQ(hypergeometric_log_lower_tail(10, 8, 4, 1), -INFINITY);  // support starts at 2
  EXPECT_DOUBLE_EQ(hypergeometric_log_upper_tail(10, 3, 4, 0), 0.0);
}

TEST(Specificity, SmallCasesMatchOracle) {
  const oracle::Hypergeometric exact(40);
  for (unsigned T = 1; T <= 40; T += 3) {
    for (unsigned F = 0; F <= T; ++F) {
      for (unsigned t = 0; t <= T; t += 2) {
        unsigned lo = 0, hi = 0;
        const auto row = exact.log10p_row(T, F, t, lo, hi);
        for (unsigned f = lo; f <= hi; ++f) {
          ASSERT_NEAR(specificity_log10p(T, F, t, f), row[f - lo], 1e-9) << T << ' ' << F << ' ' << t << ' ' << f;
        }
      }
    }
  }
}

TEST(Specificity, HandComputedValue) {
  // T=10, F=4, t=5, f=4: P(X>=4) = (C(4,4)C(6,1)) / C(10,5) = 6/252.
  EXPECT_NEAR(specificity_log10p(10, 4, 5, 4), -std::log10(6.0 / 252.0), 1e-12);
  // f=0 under-represented: P(X<=0) = C(6,5)/C(10,5) = 6/252.
  EXPECT_NEAR(specificity_log10p(10, 4, 5, 0), std::log10(6.0 / 252.0), 1e-12);
  // Exactly at expectation counts as over-represented: -log10 P(X>=2),
  // P(X<=1) = (C(6,5) + C(4,1)C(6,4)) / C(10,5) = 66/252.
  EXPECT_NEAR(specificity_log10p(10, 4, 5, 2), -std::log10(186.0 / 252.0), 1e-12);
}

TEST(Specificity, Degenerate) {
  EXPECT_EQ(specificity_log10p(0, 0, 0, 0), 0.0);
  EXPECT_EQ(specificity_log10p(10, 0, 5, 0), 0.0);
  EXPECT_EQ(specificity_log10p(10, 4, 0, 0), 0.0);
  EXPECT_EQ(specificity_z(10, 4, 0, 0), 0.0);
  EXPECT_EQ(specificity_z(10, 10, 5, 5), 0.0);  // variance vanishes
  EXPECT_EQ(specificity_z(1, 1, 1, 1), 0.0);
}

TEST(Specificity, InconsistentCountsRejected) {
  EXPECT_THROW(specificity_log10p(10, 11, 5, 1), Error);
  EXPECT_THROW(specificity_log10p(10, 4, 11, 1), Error);
  EXPECT_THROW(specificity_log10p(10, 4, 5, 5), Error);  // f > F
  EXPECT_THROW(specificity_log10p(10, 8, 5, 2), Error);  // below support
}

TEST(Specificity, LargeCountsSaturate) {
  const double v = specificity_log10p(100000000, 1000000, 500000, 100000);
  EXPECT_EQ(v, kLog10Cap);
  const double u = specificity_log10p(100000000, 1000000, 50000000, 0);
  EXPECT_EQ(u, -kLog10Cap);
  EXPECT_TRUE(std::isfinite(specificity_log10p(5000000, 20000, 1000000, 4300)));
}

TEST(Specificity, ZFormula) {
  const double T = 100, F = 20, t = 30, f = 12;
  const double p = F / T;
  const double expected = (f - t * p) / std::sqrt(t * p * (1 - p) * (T - t) / (T - 1));
  EXPECT_NEAR(specificity_z(100, 20, 30, 12), expected, 1e-12);
}

TEST(SpecificityProperty, ComplementSymmetry) {
  // Swapping the part with its complement mirrors over/under-representation.
  for (unsigned T = 2; T <= 30; ++T) {
    for (unsigned F = 1; F < T; ++F) {
      for (unsigned t = 1; t < T; ++t) {
        const unsigned lo = t + F > T ? t + F - T : 0;
        for (unsigned f = lo; f <= std::min(F, t); ++f) {
          const double z = specificity_z(T, F, t, f);
          const double zc = specificity_z(T, F, T - t, F - f);
          ASSERT_NEAR(z, -zc, 1e-9);
        }
      }
    }
  }
}

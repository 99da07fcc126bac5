#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "oracles.hpp"
#include "qpiston/errors.hpp"
#include "qpiston/hermite.hpp"
#include "qpiston/special.hpp"

using namespace qpiston;

TEST(Special, LogGammaMatchesStd) {
  for (double x : {0.1, 0.5, 1.0, 2.5, 11.0, 501.0, 1e5}) {
    EXPECT_NEAR(special::log_gamma(x), std::lgamma(x), 1e-12 * std::max(1.0, std::abs(std::lgamma(x))));
  }
  EXPECT_THROW(special::log_gamma(0.0), Error);
}

TEST(Special, Digamma) {
  EXPECT_NEAR(special::digamma(1.0), -std::numbers::egamma, 1e-15);
  // psi(n+1) = -gamma + H_n
  double harmonic = 0.0;
  for (int k = 1; k <= 500; ++k) harmonic += 1.0 / k;
  EXPECT_NEAR(special::digamma(501.0), -std::numbers::egamma + harmonic, 1e-12);
}

TEST(Special, IncompleteGammaAgainstSeries) {
  for (double s : {2.0, 11.0, 51.0, 501.0}) {
    for (double f : {0.5, 0.9, 1.0, 1.1, 1.5}) {
      const double x = f * s;
      EXPECT_NEAR(special::regularized_lower_incomplete_gamma(s, x), oracle::gamma_p_series(s, x), 1e-11)
          << "s=" << s << " x=" << x;
    }
  }
  EXPECT_EQ(special::regularized_lower_incomplete_gamma(3.0, 0.0), 0.0);
  EXPECT_EQ(special::regularized_lower_incomplete_gamma(3.0, INFINITY), 1.0);
}

TEST(Special, NormalCdfTails) {
  EXPECT_NEAR(special::normal_cdf(0.0), 0.5, 1e-16);
  EXPECT_NEAR(special::normal_cdf(-10.0), 7.61985302416046e-24, 1e-36);
  EXPECT_NEAR(special::normal_pdf(1.0), std::exp(-0.5) / std::sqrt(2 * std::numbers::pi), 1e-16);
}

TEST(Hermite, MatchesExplicitSum) {
  for (int n = 0; n <= 12; ++n) {
    for (double t : {-2.3, -0.7, 0.0, 0.4, 1.9}) {
      const double ref = oracle::hermite_explicit(n, t);
      EXPECT_NEAR(hermite::physicists(n, t), ref, 1e-10 * std::max(1.0, std::abs(ref))) << n << " " << t;
    }
  }
}

TEST(Hermite, LogSpaceLargeOrder) {
  // H_{2m}(0) = (-1)^m (2m)! / m!
  const int m = 500;
  const auto h = hermite::physicists_log(2 * m, 0.0);
  EXPECT_NEAR(h.log_abs, std::lgamma(2.0 * m + 1) - std::lgamma(m + 1.0), 1e-9 * h.log_abs);
  EXPECT_EQ(h.sign, 1);
  EXPECT_EQ(hermite::physicists_log(2 * 501, 0.0).sign, -1);
  EXPECT_TRUE(std::isfinite(hermite::physicists_log(2000, 30.0).log_abs));
}

TEST(Hermite, Roots) {
  for (int n : {1, 2, 5, 20, 100}) {
    const auto r = hermite::roots(n);
    ASSERT_EQ(static_cast<int>(r.size()), n);
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (i) EXPECT_LT(r[i - 1], r[i]);
      EXPECT_NEAR(r[i], -r[r.size() - 1 - i], 1e-10);
      EXPECT_LT(std::abs(r[i]), std::sqrt(2.0 * n + 1.0));
    }
  }
  const auto r3 = hermite::roots(3);
  EXPECT_NEAR(r3[2], std::sqrt(1.5), 1e-12);
}

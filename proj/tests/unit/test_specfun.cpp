#include <gtest/gtest.h>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <string>

#include "hdecay/errors.hpp"
#include "hdecay/specfun.hpp"
#include "oracle_values.hpp"
#include "test_util.hpp"

namespace sf = hdecay::specfun;
using testutil::log_grid;
using testutil::rel_err;

namespace {

constexpr double qnan = std::numeric_limits<double>::quiet_NaN();

template <class F>
std::string domain_message(F&& f) {
  try {
    f();
  } catch (const hdecay::DomainError& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(EulerGamma, FifteenDigits) {
  EXPECT_NEAR(sf::euler_gamma, 0.5772156649015329, 1e-16);
}

TEST(SinIntegral, Examples) {
  EXPECT_EQ(sf::sin_integral(0.0), 0.0);
  EXPECT_LT(std::abs(sf::sin_integral(1e6) - std::numbers::pi / 2), 1e-5);
  EXPECT_LT(rel_err(sf::sin_integral(1.0), 0.946083070367183), 1e-14);
}

TEST(SinIntegral, MatchesOracle) {
  for (const auto& s : oracle::sin_integral) {
    EXPECT_LT(rel_err(sf::sin_integral(s.x), s.value), 1e-14) << "x = " << s.x;
    EXPECT_LT(rel_err(sf::sin_integral(-s.x), -s.value), 1e-14) << "x = " << -s.x;
  }
}

TEST(SinIntegral, Limits) {
  EXPECT_EQ(sf::sin_integral(std::numeric_limits<double>::infinity()), std::numbers::pi / 2);
  EXPECT_TRUE(std::isnan(sf::sin_integral(qnan)));
}

TEST(CosIntegral, Examples) {
  EXPECT_LT(rel_err(sf::cos_integral(1.0), 0.337403922900968), 1e-14);
  EXPECT_NEAR(sf::cos_integral(1e-8) - std::log(1e-8), sf::euler_gamma, 1e-12);
  const double ci100 = sf::cos_integral(100.0);
  EXPECT_LT(std::abs(ci100), 0.01);
  EXPECT_EQ(std::signbit(ci100), std::signbit(std::sin(100.0) / 100.0));
}

TEST(CosIntegral, MatchesOracle) {
  for (const auto& s : oracle::cos_integral) {
    EXPECT_LT(rel_err(sf::cos_integral(s.x), s.value), 1e-14) << "x = " << s.x;
  }
}

TEST(CosIntegral, DomainErrorNamesArgument) {
  EXPECT_THROW(sf::cos_integral(0.0), hdecay::DomainError);
  const auto msg = domain_message([] { sf::cos_integral(-2.0); });
  EXPECT_NE(msg.find("x = -2"), std::string::npos) << msg;
  EXPECT_TRUE(std::isnan(sf::cos_integral(qnan)));
}

TEST(Cin, Examples) {
  EXPECT_EQ(sf::cin(0.0), 0.0);
  EXPECT_NEAR(sf::euler_gamma + std::log(2.0) - sf::cos_integral(2.0), sf::cin(2.0), 1e-13);
  EXPECT_LT(rel_err(sf::cin(1e-4), 2.5e-9), 1e-3);
}

TEST(Cin, MatchesOracle) {
  for (const auto& s : oracle::cin) {
    EXPECT_LT(rel_err(sf::cin(s.x), s.value), 1e-14) << "x = " << s.x;
  }
}

TEST(Cin, Errors) {
  EXPECT_THROW(sf::cin(-1e-300), hdecay::DomainError);
  EXPECT_TRUE(std::isnan(sf::cin(qnan)));
}

TEST(ExpEiScaled, Examples) {
  // Ei(1) = 1.895117816355937 times e^{-1}.
  EXPECT_LT(rel_err(sf::expei_scaled(1.0), 1.895117816355937 * std::exp(-1.0)), 1e-13);
  EXPECT_LT(rel_err(sf::expei_scaled(1e6), 1.000001e-6), 1e-8);
  EXPECT_NEAR(sf::expei_scaled(1e-8), -17.8434648906161828, 1e-10);
}

TEST(ExpEiScaled, MatchesOracle) {
  for (const auto& s : oracle::expei_scaled) {
    EXPECT_LT(rel_err(sf::expei_scaled(s.x), s.value), 1e-13) << "x = " << s.x;
  }
}

TEST(ExpEiScaled, Errors) {
  EXPECT_THROW(sf::expei_scaled(0.0), hdecay::DomainError);
  EXPECT_THROW(sf::expei_scaled(-3.0), hdecay::DomainError);
  EXPECT_TRUE(std::isnan(sf::expei_scaled(qnan)));
}

TEST(E1Scaled, Examples) {
  EXPECT_LT(rel_err(sf::e1_scaled(1.0), 0.596347362323194), 1e-13);
  EXPECT_LT(rel_err(sf::e1_scaled(1e6), 9.99999e-7), 1e-8);
  // e^{-x} [e^x E1(x)] + e^{x} [e^{-x} Ei(x)] = Ei(x) - Ei(-x)
  const double x = 2.0;
  const double combo = sf::e1_scaled(x) * std::exp(-x) + sf::expei_scaled(x) * std::exp(x);
  EXPECT_NEAR(combo, 5.00313486670995128, 1e-12);
}

TEST(E1Scaled, MatchesOracle) {
  for (const auto& s : oracle::e1_scaled) {
    EXPECT_LT(rel_err(sf::e1_scaled(s.x), s.value), 1e-13) << "x = " << s.x;
  }
}

TEST(E1Scaled, Errors) {
  EXPECT_THROW(sf::e1_scaled(0.0), hdecay::DomainError);
  EXPECT_TRUE(std::isnan(sf::e1_scaled(qnan)));
}

TEST(SincSq, Examples) {
  EXPECT_EQ(sf::sinc_sq(0.0), 1.0);
  EXPECT_LT(sf::sinc_sq(std::numbers::pi), 1e-30);
  EXPECT_NEAR(sf::sinc_sq(std::numbers::pi / 2), 4.0 / (std::numbers::pi * std::numbers::pi), 1e-15);
}

TEST(SincSq, SmallArgumentBranchIsContinuous) {
  for (double x : {0.99e-4, 1.01e-4, 5e-5, 1e-6}) {
    const double direct = std::pow(std::sin(x) / x, 2);
    EXPECT_LT(rel_err(sf::sinc_sq(x), direct), 1e-15) << x;
    EXPECT_EQ(sf::sinc_sq(-x), sf::sinc_sq(x));
  }
}

TEST(SpecfunProperties, SinIntegralIsOddToTheBit) {
  std::mt19937_64 rng(20240601);
  std::uniform_real_distribution<double> dist(0.0, 1e4);
  for (int i = 0; i < 1000; ++i) {
    const double x = dist(rng);
    ASSERT_EQ(sf::sin_integral(-x), -sf::sin_integral(x)) << x;
  }
}

TEST(SpecfunProperties, CinConsistency) {
  for (double x : log_grid(1e-3, 1e3, 200)) {
    EXPECT_LT(std::abs(sf::euler_gamma + std::log(x) - sf::cos_integral(x) - sf::cin(x)), 1e-12) << x;
  }
}

TEST(SpecfunProperties, ScaledTailsPositiveAndDecreasing) {
  const auto xs = log_grid(2.0, 1e8, 100);
  for (std::size_t i = 0; i < xs.size(); ++i) {
    EXPECT_GT(sf::expei_scaled(xs[i]), 0.0);
    EXPECT_GT(sf::e1_scaled(xs[i]), 0.0);
    if (i > 0) {
      EXPECT_LT(sf::expei_scaled(xs[i]), sf::expei_scaled(xs[i - 1])) << xs[i];
      EXPECT_LT(sf::e1_scaled(xs[i]), sf::e1_scaled(xs[i - 1])) << xs[i];
    }
  }
}

TEST(SpecfunProperties, ScaledTailsApproachInverse) {
  for (double x : {1e4, 1e6, 1e8}) {
    EXPECT_LT(rel_err(sf::expei_scaled(x) * x, 1.0), 1.01 / x);
    EXPECT_LT(rel_err(sf::e1_scaled(x) * x, 1.0), 1.01 / x);
  }
}

TEST(SpecfunProperties, SinIntegralDerivativeIsSinc) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> dist(0.05, 60.0);
  for (int i = 0; i < 50; ++i) {
    const double x = dist(rng);
    const double h = 1e-6 * std::max(1.0, std::abs(x));
    const double fd = (sf::sin_integral(x + h) - sf::sin_integral(x - h)) / (2.0 * h);
    const double sinc = std::sin(x) / x;
    // sinc has zeros; measure against the local amplitude 1/x.
    EXPECT_LT(std::abs(fd - sinc) / std::max(std::abs(sinc), 1.0 / x), 1e-6) << x;
  }
}

// Both branches of every switchover agree around the switch point.
TEST(SpecfunOverlap, SineCosineSeriesVersusContinuedFraction) {
  for (double x = 3.0; x <= 5.0; x += 0.05) {
    const auto cf = sf::detail::sici_continued_fraction(x);
    EXPECT_LT(rel_err(sf::detail::si_series(x), cf.si), 1e-13) << x;
    const double cin_cf = sf::euler_gamma + std::log(x) - cf.ci;
    EXPECT_LT(rel_err(sf::detail::cin_series(x), cin_cf), 1e-13) << x;
  }
}

TEST(SpecfunOverlap, ExpEiSeriesVersusAsymptotic) {
  for (double x = 40.0; x <= 60.0; x += 0.5) {
    EXPECT_LT(rel_err(sf::detail::expei_scaled_series(x), sf::detail::expei_scaled_asymptotic(x)), 1e-13)
        << x;
  }
}

TEST(SpecfunOverlap, E1SeriesVersusContinuedFraction) {
  for (double x = 0.5; x <= 2.0; x += 0.05) {
    EXPECT_LT(rel_err(sf::detail::e1_scaled_series(x), sf::detail::e1_scaled_continued_fraction(x)), 1e-13)
        << x;
  }
}

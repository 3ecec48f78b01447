#pragma once

// Double-precision sine, cosine and exponential integrals.
//
// Only cancellation-safe combinations are exposed: cin() instead of
// Ci(x) - ln(x) - gamma, and the exponentially scaled e^{-x} Ei(x) and
// e^{x} E1(x) instead of the bare exponential integrals, which overflow or
// underflow long before the products they appear in do.

namespace hdecay::specfun {

/// Euler-Mascheroni constant.
inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;

/// Si(x) = int_0^x sin(u)/u du. Odd; NaN propagates.
double sin_integral(double x);

/// Ci(x) = gamma + ln x + int_0^x (cos u - 1)/u du, for x > 0.
/// Throws DomainError for x <= 0.
double cos_integral(double x);

/// cin(x) = int_0^x (1 - cos u)/u du = gamma + ln x - Ci(x), for x >= 0.
/// Entire function; cin(0) == 0 exactly. Throws DomainError for x < 0.
double cin(double x);

/// e^{-x} Ei(x) for x > 0. Tends to 1/x. Throws DomainError for x <= 0.
double expei_scaled(double x);

/// e^{x} E1(x) = -e^{x} Ei(-x) for x > 0. Tends to 1/x.
/// Throws DomainError for x <= 0.
double e1_scaled(double x);

/// (sin x / x)^2 with the removable singularity at 0 filled in.
double sinc_sq(double x);

namespace detail {

// Branch switchover points. Both branches are kept callable so the overlap
// bands can be tested.
inline constexpr double sici_series_max = 4.0;
inline constexpr double expei_series_max = 40.0;
inline constexpr double e1_series_max = 1.0;

double si_series(double x);
double cin_series(double x);

struct SiCi {
  double si;
  double ci;
};
/// Si and Ci from the continued fraction of E1(ix); x > 0.
SiCi sici_continued_fraction(double x);

double expei_scaled_series(double x);
double expei_scaled_asymptotic(double x);
double e1_scaled_series(double x);
double e1_scaled_continued_fraction(double x);

}  // namespace detail

}  // namespace hdecay::specfun

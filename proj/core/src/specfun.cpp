#include "hdecay/specfun.hpp"

#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <string>

#include "hdecay/errors.hpp"

namespace hdecay::specfun {

namespace {

constexpr double eps = std::numeric_limits<double>::epsilon();
constexpr double fpmin = std::numeric_limits<double>::min() / eps;
constexpr int max_iterations = 10000;

[[noreturn]] void domain_failure(const char* function, const char* requirement, double x) {
  throw DomainError(std::string(function) + ": argument x = " + std::to_string(x) +
                    " violates " + requirement);
}

// Kahan-Babuska accumulator; the series below sum up to a hundred terms.
struct CompensatedSum {
  double sum = 0.0;
  double carry = 0.0;
  void add(double v) {
    const double t = sum + v;
    if (std::abs(sum) >= std::abs(v)) {
      carry += (sum - t) + v;
    } else {
      carry += (v - t) + sum;
    }
    sum = t;
  }
  double value() const { return sum + carry; }
};

}  // namespace

namespace detail {

double si_series(double x) {
  // sum_{n>=0} (-1)^n x^{2n+1} / ((2n+1) (2n+1)!)
  const double x2 = x * x;
  double term = x;  // (-1)^n x^{2n+1} / (2n+1)!
  CompensatedSum acc;
  acc.add(term);
  for (int n = 1; n < max_iterations; ++n) {
    const double k = 2.0 * n;
    term *= -x2 / (k * (k + 1.0));
    const double contribution = term / (k + 1.0);
    acc.add(contribution);
    if (std::abs(contribution) < eps * std::abs(acc.sum)) break;
  }
  return acc.value();
}

double cin_series(double x) {
  // sum_{n>=1} (-1)^{n+1} x^{2n} / (2n (2n)!)
  if (x == 0.0) return 0.0;
  const double x2 = x * x;
  double term = x2 / 2.0;  // (-1)^{n+1} x^{2n} / (2n)!
  CompensatedSum acc;
  acc.add(term / 2.0);
  for (int n = 2; n < max_iterations; ++n) {
    const double k = 2.0 * n;
    term *= -x2 / ((k - 1.0) * k);
    const double contribution = term / k;
    acc.add(contribution);
    if (std::abs(contribution) < eps * std::abs(acc.sum)) break;
  }
  return acc.value();
}

SiCi sici_continued_fraction(double x) {
  // Modified Lentz evaluation of E1(ix) = -Ci(x) + i (Si(x) - pi/2).
  using cplx = std::complex<double>;
  cplx b(1.0, x);
  cplx c(1.0 / fpmin, 0.0);
  cplx d = 1.0 / b;
  cplx h = d;
  for (int i = 2; i < max_iterations; ++i) {
    const double a = -static_cast<double>(i - 1) * static_cast<double>(i - 1);
    b += 2.0;
    d = 1.0 / (a * d + b);
    c = b + a / c;
    const cplx del = c * d;
    h *= del;
    if (std::abs(del.real() - 1.0) + std::abs(del.imag()) < eps) break;
  }
  h *= cplx(std::cos(x), -std::sin(x));
  return {std::numbers::pi / 2.0 + h.imag(), -h.real()};
}

double expei_scaled_series(double x) {
  // Ei(x) = gamma + ln x + sum_{k>=1} x^k / (k k!); every term is positive.
  CompensatedSum acc;
  double term = 1.0;  // x^k / k!
  for (int k = 1; k < max_iterations; ++k) {
    term *= x / k;
    const double contribution = term / k;
    acc.add(contribution);
    if (contribution < eps * acc.sum) break;
  }
  acc.add(std::log(x));
  acc.add(euler_gamma);
  return std::exp(-x) * acc.value();
}

double expei_scaled_asymptotic(double x) {
  // e^{-x} Ei(x) ~ (1/x) sum_k k! / x^k, truncated at the smallest term.
  CompensatedSum acc;
  double term = 1.0;
  acc.add(term);
  for (int k = 1; k < max_iterations; ++k) {
    const double next = term * k / x;
    if (next >= term) break;
    term = next;
    acc.add(term);
    if (term < eps * acc.sum) break;
  }
  return acc.value() / x;
}

double e1_scaled_series(double x) {
  // E1(x) = -gamma - ln x - sum_{k>=1} (-x)^k / (k k!)
  CompensatedSum acc;
  acc.add(-euler_gamma);
  acc.add(-std::log(x));
  double term = 1.0;  // (-x)^k / k!
  for (int k = 1; k < max_iterations; ++k) {
    term *= -x / k;
    const double contribution = -term / k;
    acc.add(contribution);
    if (std::abs(contribution) < eps * std::abs(acc.sum)) break;
  }
  return std::exp(x) * acc.value();
}

double e1_scaled_continued_fraction(double x) {
  // Modified Lentz evaluation of e^{x} E1(x) = 1/(x+1- 1/(x+3- 4/(x+5- ...))).
  double b = x + 1.0;
  double c = 1.0 / fpmin;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i < max_iterations; ++i) {
    const double an = -static_cast<double>(i) * static_cast<double>(i);
    b += 2.0;
    d = 1.0 / (an * d + b);
    c = b + an / c;
    const double del = c * d;
    h *= del;
    if (std::abs(del - 1.0) < eps) break;
  }
  return h;
}

}  // namespace detail

double sin_integral(double x) {
  if (std::isnan(x)) return x;
  const double ax = std::abs(x);
  double value;
  if (std::isinf(ax)) {
    value = std::numbers::pi / 2.0;
  } else if (ax <= detail::sici_series_max) {
    value = detail::si_series(ax);
  } else {
    value = detail::sici_continued_fraction(ax).si;
  }
  return std::copysign(value, x);
}

double cos_integral(double x) {
  if (std::isnan(x)) return x;
  if (!(x > 0.0)) domain_failure("cos_integral", "x > 0", x);
  if (std::isinf(x)) return 0.0;
  if (x <= detail::sici_series_max) {
    return (euler_gamma + std::log(x)) - detail::cin_series(x);
  }
  return detail::sici_continued_fraction(x).ci;
}

double cin(double x) {
  if (std::isnan(x)) return x;
  if (x < 0.0) domain_failure("cin", "x >= 0", x);
  if (x <= detail::sici_series_max) return detail::cin_series(x);
  if (std::isinf(x)) return x;
  return (euler_gamma + std::log(x)) - detail::sici_continued_fraction(x).ci;
}

double expei_scaled(double x) {
  if (std::isnan(x)) return x;
  if (!(x > 0.0)) domain_failure("expei_scaled", "x > 0", x);
  if (x <= detail::expei_series_max) return detail::expei_scaled_series(x);
  return detail::expei_scaled_asymptotic(x);
}

double e1_scaled(double x) {
  if (std::isnan(x)) return x;
  if (!(x > 0.0)) domain_failure("e1_scaled", "x > 0", x);
  if (x <= detail::e1_series_max) return detail::e1_scaled_series(x);
  return detail::e1_scaled_continued_fraction(x);
}

double sinc_sq(double x) {
  if (std::abs(x) < 1e-4) {
    const double x2 = x * x;
    return 1.0 - x2 / 3.0 + 2.0 * x2 * x2 / 45.0;
  }
  const double s = std::sin(x) / x;
  return s * s;
}

}  // namespace hdecay::specfun

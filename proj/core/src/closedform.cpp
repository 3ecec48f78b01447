#include "hdecay/closedform.hpp"

#include <array>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>

#include "hdecay/errors.hpp"
#include "hdecay/specfun.hpp"

namespace hdecay::closedform {

namespace {

using cplx = std::complex<double>;
constexpr double pi = std::numbers::pi;

void require_positive_time(double t, const char* function) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw DomainError(std::string(function) + ": t must be finite and > 0, got " + std::to_string(t));
  }
}

ClosedFormValue from_scaled(double scaled, double t, Branch branch) {
  return {scaled / (t * t), scaled, branch};
}

// 1 - cos(x) without cancellation.
double one_minus_cos(double x) {
  const double s = std::sin(0.5 * x);
  return 2.0 * s * s;
}

}  // namespace

ZenoSeries zeno_series(const model::TransitionParams& params) {
  // Moments J_k = int_0^inf u^k / (1 + u^2)^4 du.
  constexpr double j1 = 1.0 / 6.0;
  constexpr double j2 = pi / 32.0;
  constexpr double j3 = 1.0 / 12.0;
  constexpr double j4 = pi / 32.0;
  constexpr double j5 = 1.0 / 6.0;
  const double r = params.ratio;
  const double r2 = r * r;
  // int u (u - r)^2 / (1+u^2)^4 and int u (u - r)^4 / (1+u^2)^4
  const double m2 = j3 - 2.0 * r * j2 + r2 * j1;
  const double m4 = j5 - 4.0 * r * j4 + 6.0 * r2 * j3 - 4.0 * r2 * r * j2 + r2 * r2 * j1;
  // 4 sin^2(y/2)/y^2 = 1 - y^2/12 + y^4/360 - ...; normalised by the j1 term.
  return {0.0, -m2 / (12.0 * j1), m4 / (360.0 * j1)};
}

ClosedFormValue dipole_regularized(const model::TransitionParams& params, double t) {
  require_positive_time(t, "dipole_regularized");
  const double p = params.omega0 * t;
  const double s = std::sin(0.5 * p);
  // Ci(p) - ln(p) - gamma == -cin(p); sgn t == 1 on the domain.
  const double scaled =
      -4.0 * s * s - 2.0 * specfun::cin(p) + pi * p * (1.0 + (2.0 / pi) * specfun::sin_integral(p));
  return from_scaled(scaled, t, Branch::full_expression);
}

ClosedFormValue truncated_dipole_closed(const model::TransitionParams& params, double omegaC,
                                        double t) {
  require_positive_time(t, "truncated_dipole_closed");
  const double w0 = params.omega0;
  if (!(omegaC > w0) || !std::isfinite(omegaC)) {
    throw DomainError("truncated_dipole_closed: omegaC must exceed omega0 (log(omegaC/omega0 - 1))");
  }
  const double span = omegaC - w0;
  const double x1 = span * t;
  const double x2 = w0 * t;
  // log(omegaC/omega0 - 1) - [Ci(x1) - Ci(x2)] == cin(x1) - cin(x2): the
  // logarithms cancel identically once Ci = gamma + ln - cin is substituted.
  const double log_ci = specfun::cin(x1) - specfun::cin(x2);
  const double bracket = log_ci - (w0 / span) * one_minus_cos(x1) - one_minus_cos(x2) +
                         x2 * (specfun::sin_integral(x1) + specfun::sin_integral(x2));
  return from_scaled(2.0 * bracket, t, Branch::full_expression);
}

ClosedFormValue exact_IF(const model::TransitionParams& params,
                         const model::ResidueCoefficients& coeffs, double t) {
  require_positive_time(t, "exact_IF");
  const double wx = params.omegaX;
  const double w0 = params.omega0;
  const double x = wx * t;
  const double p = w0 * t;

  if (x < series_threshold) {
    const ZenoSeries z = zeno_series(params);
    const double x2 = x * x;
    const double scaled = x2 / 6.0 * (1.0 + z.c1 * x + z.c2 * x2 + z.c4 * x2 * x2);
    return from_scaled(scaled, t, Branch::series_small_t);
  }

  // Dimensionless residues: beta_k = B_k / omegaX^k, alpha1 = A1 / omega0.
  const std::array<cplx, 4> beta = {coeffs.b0, coeffs.b1 / wx, coeffs.b2 / (wx * wx),
                                    coeffs.b3 / (wx * wx * wx)};
  const double a0 = coeffs.a0c;
  const cplx alpha1 = coeffs.a1c / w0;
  const cplx i(0.0, 1.0);
  const cplx e_plus = std::polar(1.0, p);   // e^{+i omega0 t}
  const cplx e_minus = std::conj(e_plus);   // e^{-i omega0 t}
  const double s_half = std::sin(0.5 * p);
  const double sin2_half = s_half * s_half;
  const double powers[4] = {1.0, x, x * x, x * x * x};

  // B_k t^k = beta_k x^k. q_plus = sum B_k t^k, q_minus = sum (-1)^k B_k t^k.
  cplx q_plus = 0.0;
  cplx q_minus = 0.0;
  for (int k = 0; k < 4; ++k) {
    const cplx term = beta[k] * powers[k];
    q_plus += term;
    q_minus += (k % 2 == 0) ? term : -term;
  }

  // -2 A0 (log(omega0/omegaX) - Ci(omega0 t))
  //   == 2 A0 (gamma + ln(omegaX t) - cin(omega0 t))
  cplx sum = 2.0 * a0 * (specfun::euler_gamma + std::log(x) - specfun::cin(p));
  // i pi (B0 - B0*)
  sum += i * pi * (beta[0] - std::conj(beta[0]));
  // A1 [ -4 i/omega0 sin^2(omega0 t/2) + i pi t (sgn t + (2/pi) Si(omega0 t)) ]
  sum += alpha1 * (-4.0 * i * sin2_half + i * pi * p * (1.0 + (2.0 / pi) * specfun::sin_integral(p)));

  // i pi e^{-omegaX t} sum_k (-1)^k (B_k* e^{i w0 t} - B_k e^{-i w0 t}) t^k
  const double decay = std::exp(-x);
  if (decay > 0.0) {
    cplx residue_sum = 0.0;
    for (int k = 0; k < 4; ++k) {
      const cplx term = (std::conj(beta[k]) * e_plus - beta[k] * e_minus) * powers[k];
      residue_sum += (k % 2 == 0) ? term : -term;
    }
    sum += i * pi * decay * residue_sum;
  }

  // e^{-x} Ei(x) [Q_-* e^{i w0 t} + Q_- e^{-i w0 t}]
  // + e^{x} Ei(-x) [Q_+* e^{-i w0 t} + Q_+ e^{i w0 t}],   e^{x} Ei(-x) = -e^{x} E1(x)
  sum += specfun::expei_scaled(x) * (std::conj(q_minus) * e_plus + q_minus * e_minus);
  sum -= specfun::e1_scaled(x) * (std::conj(q_plus) * e_minus + q_plus * e_plus);

  // (2/omegaX^3) [ -2 ((B1+B1*) wX^2 - (B2+B2*) wX + 2 (B3+B3*)) sin^2(w0 t/2)
  //   + i ((B2-B2*) wX - (B3-B3*)) wX t sin(w0 t) + (B3+B3*) wX^2 t^2 cos(w0 t) ]
  const cplx sym1 = beta[1] + std::conj(beta[1]);
  const cplx sym2 = beta[2] + std::conj(beta[2]);
  const cplx sym3 = beta[3] + std::conj(beta[3]);
  const cplx anti2 = beta[2] - std::conj(beta[2]);
  const cplx anti3 = beta[3] - std::conj(beta[3]);
  sum += 2.0 * (-2.0 * (sym1 - sym2 + 2.0 * sym3) * sin2_half + i * (anti2 - anti3) * x * std::sin(p) +
                sym3 * powers[2] * std::cos(p));

  return from_scaled(sum.real(), t, Branch::full_expression);
}

double zeno_asymptote(const model::TransitionParams& params, double t) {
  const double x = params.omegaX * t;
  return params.lambda_sq * x * x / 6.0;
}

double matched_cutoff(const model::TransitionParams& params) {
  return params.omegaX / std::sqrt(3.0);
}

}  // namespace hdecay::closedform

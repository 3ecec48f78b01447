#include "hdecay/model.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hdecay/errors.hpp"

namespace hdecay::model {

namespace {

using cplx = std::complex<double>;

double checked_override(const std::optional<double>& value, double fallback, const char* name) {
  if (!value) return fallback;
  if (!(*value > 0.0) || !std::isfinite(*value)) {
    throw ParameterError(std::string("derive_params: override ") + name +
                         " must be positive and finite, got " + std::to_string(*value));
  }
  return *value;
}

}  // namespace

double lambda_squared(double alpha) {
  return (2.0 / std::numbers::pi) * std::pow(2.0 / 3.0, 9) * alpha * alpha * alpha;
}

TransitionParams derive_params(const PhysicalConstants& constants,
                               const FrequencyOverrides& overrides) {
  const double inv_time = constants.c / constants.a0;
  TransitionParams p;
  p.omegaX = checked_override(overrides.omegaX, 1.5 * inv_time, "omegaX");
  p.omega0 = checked_override(overrides.omega0, 0.375 * constants.alpha * inv_time, "omega0");
  p.ratio = p.omega0 / p.omegaX;
  p.lambda_sq = lambda_squared(constants.alpha);
  const double r2p1 = 1.0 + p.ratio * p.ratio;
  const double abs_a1 = p.omega0 / (r2p1 * r2p1 * r2p1 * r2p1);
  p.gamma_fermi = 2.0 * std::numbers::pi * p.lambda_sq * abs_a1;
  return p;
}

namespace detail {

ResidueCoefficients signed_residue_coefficients(const TransitionParams& params) {
  // All expressions are written in r = omega0/omegaX with omegaX^k factored
  // out of B_k, so no omegaX^8-sized intermediates appear.
  const double r = params.ratio;
  const double r2 = r * r;
  const double r3 = r2 * r;
  const double wx = params.omegaX;
  const cplx i(0.0, 1.0);

  const double r2p1 = 1.0 + r2;
  const double r2p1_4 = r2p1 * r2p1 * r2p1 * r2p1;

  ResidueCoefficients rc;
  rc.a0c = (1.0 - 7.0 * r2) / (r2p1_4 * r2p1);
  rc.a1c = -i * params.omega0 / r2p1_4;

  const cplx one_ir = 1.0 + i * r;
  const cplx denom = 96.0 * (one_ir * one_ir) * (one_ir * one_ir) * one_ir;
  rc.b0 = -(-6.0 * r2 + 30.0 * i * r + 48.0) / denom;
  rc.b1 = wx * (-3.0 * i * r3 - 21.0 * r2 + 51.0 * i * r + 33.0) / denom;
  rc.b2 = -(wx * wx) * (-3.0 * i * r3 - 15.0 * r2 + 21.0 * i * r + 9.0) / denom;
  rc.b3 = (wx * wx * wx) * (-i * r3 - 3.0 * r2 + 3.0 * i * r + 1.0) / denom;
  return rc;
}

}  // namespace detail

ResidueCoefficients residue_coefficients(const TransitionParams& params) {
  if (!(params.omega0 > 0.0) || !(params.omegaX > 0.0)) {
    throw ParameterError("residue_coefficients: omega0 and omegaX must be positive");
  }
  return detail::signed_residue_coefficients(params);
}

double golden_rule_gamma(const TransitionParams& params, const ResidueCoefficients& coeffs) {
  return 2.0 * std::numbers::pi * params.lambda_sq * std::abs(coeffs.a1c);
}

}  // namespace hdecay::model

#pragma once

#include <complex>
#include <optional>

namespace hdecay::model {

/// CODATA 2018 values. SI units.
struct PhysicalConstants {
  double alpha = 7.2973525693e-3;  ///< fine-structure constant
  double c = 2.99792458e8;         ///< speed of light [m/s]
  double a0 = 5.29177210903e-11;   ///< Bohr radius [m]
};

/// Optional replacements for the default hydrogen frequencies [rad/s].
struct FrequencyOverrides {
  std::optional<double> omega0;
  std::optional<double> omegaX;
};

/// Everything a decay-curve evaluation needs.
struct TransitionParams {
  double omega0 = 0.0;       ///< transition angular frequency [rad/s]
  double omegaX = 0.0;       ///< coupling cutoff (3/2) c / a0 [rad/s]
  double ratio = 0.0;        ///< omega0 / omegaX
  double lambda_sq = 0.0;    ///< (2/pi) (2/3)^9 alpha^3
  double gamma_fermi = 0.0;  ///< golden-rule decay constant [1/s]
};

/// Residue coefficients of the exact-coupling spectral function at its
/// poles omega0 (A0, A1) and +i omegaX (B0..B3). B_k carries (rad/s)^k.
struct ResidueCoefficients {
  double a0c = 0.0;
  std::complex<double> a1c;
  std::complex<double> b0;
  std::complex<double> b1;
  std::complex<double> b2;
  std::complex<double> b3;
};

/// 2^10 alpha^3 / (3^9 pi), the dimensionless coupling strength.
double lambda_squared(double alpha);

/// Defaults: omegaX = (3/2) c/a0 and omega0 = (3/8) alpha c/a0 (Bohr-model
/// Lyman-alpha), so ratio = alpha/4. Throws ParameterError on a non-positive
/// override.
TransitionParams derive_params(const PhysicalConstants& constants = {},
                               const FrequencyOverrides& overrides = {});

ResidueCoefficients residue_coefficients(const TransitionParams& params);

namespace detail {
/// residue_coefficients without the sign checks; omega0 < 0 (with ratio < 0)
/// gives the coefficients of the mirrored pole configuration.
ResidueCoefficients signed_residue_coefficients(const TransitionParams& params);
}  // namespace detail

/// Gamma = 2 pi lambda^2 |A1| [1/s].
double golden_rule_gamma(const TransitionParams& params, const ResidueCoefficients& coeffs);

}  // namespace hdecay::model

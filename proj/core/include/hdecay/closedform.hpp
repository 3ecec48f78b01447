#pragma once

#include "hdecay/model.hpp"

namespace hdecay::closedform {

enum class Branch { series_small_t, full_expression };

struct ClosedFormValue {
  double value = 0.0;   ///< I(t) [(rad/s)^2]
  double scaled = 0.0;  ///< t^2 I(t), dimensionless; decay probability / lambda^2
  Branch branch = Branch::full_expression;
};

/// Below this omegaX t the exact result switches to its short-time series.
inline constexpr double series_threshold = 1e-2;

/// Short-time expansion t^2 I_F = (x^2/6) (1 + c1 x + c2 x^2 + c4 x^4), x = omegaX t.
/// The coefficients are the spectral moments of omega F(omega); c1 vanishes
/// because the expansion of sinc^2 is even in t.
struct ZenoSeries {
  double c1 = 0.0;
  double c2 = 0.0;
  double c4 = 0.0;
};
ZenoSeries zeno_series(const model::TransitionParams& params);

/// Regular part of the cutoff-free dipole integral; t > 0.
ClosedFormValue dipole_regularized(const model::TransitionParams& params, double t);

/// int_0^omegaC omega sinc^2((omega0 - omega) t/2) domega in closed form;
/// omegaC > omega0, t > 0.
ClosedFormValue truncated_dipole_closed(const model::TransitionParams& params, double omegaC,
                                        double t);

/// Exact-coupling first-order integral I_F(t); t > 0.
ClosedFormValue exact_IF(const model::TransitionParams& params,
                         const model::ResidueCoefficients& coeffs, double t);

/// Short-time decay probability lambda^2 (omegaX t)^2 / 6.
double zeno_asymptote(const model::TransitionParams& params, double t);

/// omegaX / sqrt(3): the dipole cutoff whose Zeno coefficient omegaC^2/2
/// equals the exact one omegaX^2/6.
double matched_cutoff(const model::TransitionParams& params);

}  // namespace hdecay::closedform

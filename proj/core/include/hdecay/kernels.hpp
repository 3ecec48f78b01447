#pragma once

// Angle-integrated spectral integrands of the survival-probability integrals.

#include "hdecay/model.hpp"
#include "hdecay/specfun.hpp"

namespace hdecay::kernels {

struct KernelSample {
  double omega;  ///< [rad/s]
  double value;  ///< [rad/s]
};

/// Exact-to-dipole coupling ratio 1/[1 + (omega/omegaX)^2]^4.
inline double form_factor(double omega, double omegaX) {
  const double u = omega / omegaX;
  const double q = 1.0 + u * u;
  const double q2 = q * q;
  return 1.0 / (q2 * q2);
}

/// theta(omega) * omega * sinc^2((omega0 - omega) t / 2).
inline double dipole_integrand(double omega, double t, const model::TransitionParams& params) {
  if (omega < 0.0) return 0.0;
  return omega * specfun::sinc_sq(0.5 * (params.omega0 - omega) * t);
}

/// dipole_integrand * form_factor; decays like omega^-7 beyond omegaX.
inline double exact_integrand(double omega, double t, const model::TransitionParams& params) {
  return dipole_integrand(omega, t, params) * form_factor(omega, params.omegaX);
}

inline KernelSample sample_exact(double omega, double t, const model::TransitionParams& params) {
  return {omega, exact_integrand(omega, t, params)};
}

}  // namespace hdecay::kernels

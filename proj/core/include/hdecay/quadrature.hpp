#pragma once

// Adaptive Gauss-Kronrod oracle for the two oscillatory spectral integrals
//
//   I_F(t)   = int_0^inf   omega F(omega) sinc^2((omega0 - omega) t / 2) domega
//   I_C(t)   = int_0^omegaC omega          sinc^2((omega0 - omega) t / 2) domega
//
// The domain is tiled with half-period cells of width pi/t starting at
// omega0; all cells share one global error-driven bisection queue. For the
// exact integral, whatever lies beyond the last cell is handled by splitting
// sinc^2 into (1 - cos) / delta^2: the smooth part is integrated on a
// compactified interval and the cosine part by integration by parts.

#include <cstddef>

#include "hdecay/model.hpp"

namespace hdecay::quadrature {

struct QuadratureResult {
  double value = 0.0;               ///< [(rad/s)^2]
  double abs_error_estimate = 0.0;  ///< [(rad/s)^2]
  std::size_t panels = 0;           ///< final number of integration segments
  std::size_t evaluations = 0;      ///< integrand evaluations spent
};

struct QuadratureOptions {
  std::size_t max_evaluations = 1'000'000;
  std::size_t max_cells = 10'000;
  /// Multiplies the upper truncation point omega0 + max(50 omegaX, 200 pi/t).
  double truncation_scale = 1.0;
};

inline constexpr double min_rel_tol = 1e-13;
inline constexpr double max_rel_tol = 1e-3;

/// I_F(t) for t >= 0 to relative accuracy rel_tol in [1e-13, 1e-3].
/// Throws ConvergenceError when the evaluation budget runs out.
QuadratureResult integrate_exact(const model::TransitionParams& params, double t, double rel_tol,
                                 const QuadratureOptions& options = {});

/// I_C(t) for omegaC > omega0 and t >= 0.
QuadratureResult integrate_truncated_dipole(const model::TransitionParams& params, double omegaC,
                                            double t, double rel_tol,
                                            const QuadratureOptions& options = {});

}  // namespace hdecay::quadrature

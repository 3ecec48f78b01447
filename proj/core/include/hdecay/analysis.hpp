#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "hdecay/model.hpp"

namespace hdecay::analysis {

enum class ModelKind {
  exact,
  dipole_regularized,
  dipole_cutoff,
  golden_rule_linear,
  golden_rule_exponential,
  zeno,
};

/// A decay model; only dipole_cutoff carries a parameter (omegaC, rad/s).
class ModelId {
 public:
  static ModelId exact() { return ModelId(ModelKind::exact); }
  static ModelId dipole_regularized() { return ModelId(ModelKind::dipole_regularized); }
  static ModelId golden_rule_linear() { return ModelId(ModelKind::golden_rule_linear); }
  static ModelId golden_rule_exponential() { return ModelId(ModelKind::golden_rule_exponential); }
  static ModelId zeno() { return ModelId(ModelKind::zeno); }
  /// Throws ParameterError unless omegaC is positive and finite.
  static ModelId dipole_cutoff(double omegaC);

  ModelKind kind() const { return kind_; }
  /// Set only for dipole_cutoff.
  std::optional<double> cutoff() const { return cutoff_; }

  std::string name() const;

  friend bool operator==(const ModelId&, const ModelId&) = default;

 private:
  explicit ModelId(ModelKind kind, std::optional<double> cutoff = std::nullopt)
      : kind_(kind), cutoff_(cutoff) {}

  ModelKind kind_;
  std::optional<double> cutoff_;
};

/// Parses the model names used on the command line (exact, dipole_regularized,
/// dipole_cutoff, golden_rule_linear, golden_rule_exponential, zeno).
std::optional<ModelKind> parse_model_kind(std::string_view name);

/// Amplitude of the exponential reference Z e^{-Gamma t}: Z = 1 - 4.39 lambda^2.
double exponential_weight(const model::TransitionParams& params);

/// Everything a model evaluation needs.
struct Context {
  model::TransitionParams params;
  model::ResidueCoefficients coeffs;
};
Context hydrogen_context();

/// 1 - P_surv(t). Defined at t = 0 (returns 0 for every model); throws
/// DomainError for t < 0.
double decay(const ModelId& model, const Context& ctx, double t);

/// P_surv(t) = 1 - decay; P_surv(0) == 1.
double survival(const ModelId& model, const Context& ctx, double t);

enum class Spacing { log, linear };

/// Samples whose decay probability exceeds this lie outside the first-order
/// validity window and are flagged.
inline constexpr double perturbative_limit = 1e-3;

struct DecayCurve {
  ModelId model = ModelId::exact();
  std::vector<double> times;     ///< [s], strictly increasing
  std::vector<double> survival;  ///< dimensionless
  std::vector<double> decay;     ///< 1 - survival, computed directly
  std::vector<bool> flagged;     ///< decay > perturbative_limit
};

/// Grid of `points` times on [tmin, tmax]. Throws ParameterError unless
/// 0 < tmin < tmax and points >= 2.
std::vector<double> time_grid(double tmin, double tmax, std::size_t points, Spacing spacing);

/// `threads` > 1 splits the grid across worker threads; the output does not
/// depend on the thread count.
DecayCurve sample_curve(const ModelId& model, const Context& ctx, double tmin, double tmax,
                        std::size_t points, Spacing spacing, unsigned threads = 1);
DecayCurve sample_curve(const ModelId& model, const Context& ctx, const std::vector<double>& times,
                        unsigned threads = 1);

struct Deviation {
  double time = 0.0;       ///< t* [s]
  double value = 0.0;      ///< max |survival_A - survival_B|
  double relative = 0.0;   ///< |decay_A - decay_B| / max(decay_A, decay_B) at t*
};

/// Max absolute survival gap between two curves sampled on the same grid.
/// Throws ParameterError if the grids differ.
Deviation max_deviation(const DecayCurve& a, const DecayCurve& b);

/// As above, then refined by three rounds of local bisection around the
/// coarse maximum, re-evaluating both models through `ctx`.
Deviation max_deviation(const DecayCurve& a, const DecayCurve& b, const Context& ctx);

/// Largest relative decay gap |dA - dB| / max(dA, dB) on the shared grid.
Deviation max_relative_decay_deviation(const DecayCurve& a, const DecayCurve& b);

struct RegimeOptions {
  double zeno_tolerance = 0.10;    ///< tau_cutoff: exact departs the Zeno law by this much
  double golden_tolerance = 0.01;  ///< transition: exact stays this close to Gamma t
  double scan_tmin = 1e-22;
  double scan_tmax = 1e-12;
  std::size_t scan_points = 4000;
  double deviation_tmin = 1e-20;
  double deviation_tmax = 1e-13;
  std::size_t deviation_points = 2000;
};

struct RegimeReport {
  double tau_zeno = 0.0;            ///< [s] P ~ 1 - (t/tau_Z)^2
  double tau_cutoff = 0.0;          ///< [s] exit from the Zeno regime
  double transition_time = 0.0;     ///< [s] entry into the golden-rule regime
  double max_deviation = 0.0;       ///< max |P_exact - P_golden|
  double max_deviation_time = 0.0;  ///< [s]
  double max_relative_deviation = 0.0;
  double zeno_strength = 0.0;       ///< tau_cutoff / tau_zeno
};

/// Throws AnalysisError naming the timescale that could not be located.
RegimeReport regime_report(const Context& ctx, const RegimeOptions& options = {});

}  // namespace hdecay::analysis

#include "hdecay/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <string>
#include <thread>

#include "hdecay/closedform.hpp"
#include "hdecay/errors.hpp"

namespace hdecay::analysis {

namespace {

// Z = 1 - 4.39 lambda^2, quoted for the nonperturbative solution.
constexpr double exponential_deficit = 4.39;

double geometric_mid(double a, double b) { return std::sqrt(a) * std::sqrt(b); }

void require_same_grid(const DecayCurve& a, const DecayCurve& b) {
  if (a.times != b.times) throw ParameterError("max_deviation: curves are sampled on different grids");
  if (a.times.empty()) throw ParameterError("max_deviation: empty curves");
}

// Bisection on log t for the boundary between `lo` (predicate false) and
// `hi` (predicate true). Returns the first time at which it holds.
template <class Predicate>
double locate_crossing(double lo, double hi, Predicate holds) {
  for (int iter = 0; iter < 60; ++iter) {
    const double mid = geometric_mid(lo, hi);
    if (!(mid > lo && mid < hi)) break;
    (holds(mid) ? hi : lo) = mid;
  }
  return hi;
}

}  // namespace

ModelId ModelId::dipole_cutoff(double omegaC) {
  if (!(omegaC > 0.0) || !std::isfinite(omegaC)) {
    throw ParameterError("dipole_cutoff: omegaC must be positive and finite");
  }
  return ModelId(ModelKind::dipole_cutoff, omegaC);
}

std::string ModelId::name() const {
  switch (kind_) {
    case ModelKind::exact: return "exact";
    case ModelKind::dipole_regularized: return "dipole_regularized";
    case ModelKind::dipole_cutoff: return "dipole_cutoff";
    case ModelKind::golden_rule_linear: return "golden_rule_linear";
    case ModelKind::golden_rule_exponential: return "golden_rule_exponential";
    case ModelKind::zeno: return "zeno";
  }
  return "unknown";
}

std::optional<ModelKind> parse_model_kind(std::string_view name) {
  if (name == "exact") return ModelKind::exact;
  if (name == "dipole_regularized") return ModelKind::dipole_regularized;
  if (name == "dipole_cutoff") return ModelKind::dipole_cutoff;
  if (name == "golden_rule_linear") return ModelKind::golden_rule_linear;
  if (name == "golden_rule_exponential") return ModelKind::golden_rule_exponential;
  if (name == "zeno") return ModelKind::zeno;
  return std::nullopt;
}

double exponential_weight(const model::TransitionParams& params) {
  return 1.0 - exponential_deficit * params.lambda_sq;
}

Context hydrogen_context() {
  Context ctx;
  ctx.params = model::derive_params();
  ctx.coeffs = model::residue_coefficients(ctx.params);
  return ctx;
}

double decay(const ModelId& model, const Context& ctx, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw DomainError("decay: t must be finite and >= 0, got " + std::to_string(t));
  }
  if (t == 0.0) return 0.0;
  const auto& p = ctx.params;
  switch (model.kind()) {
    case ModelKind::exact:
      return p.lambda_sq * closedform::exact_IF(p, ctx.coeffs, t).scaled;
    case ModelKind::dipole_regularized:
      return p.lambda_sq * closedform::dipole_regularized(p, t).scaled;
    case ModelKind::dipole_cutoff:
      return p.lambda_sq * closedform::truncated_dipole_closed(p, *model.cutoff(), t).scaled;
    case ModelKind::golden_rule_linear:
      return model::golden_rule_gamma(p, ctx.coeffs) * t;
    case ModelKind::golden_rule_exponential: {
      const double z = exponential_weight(p);
      // 1 - Z e^{-Gamma t} = (1 - Z) - Z expm1(-Gamma t)
      return (1.0 - z) - z * std::expm1(-model::golden_rule_gamma(p, ctx.coeffs) * t);
    }
    case ModelKind::zeno:
      return closedform::zeno_asymptote(p, t);
  }
  throw ParameterError("decay: unknown model");
}

double survival(const ModelId& model, const Context& ctx, double t) {
  return 1.0 - decay(model, ctx, t);
}

std::vector<double> time_grid(double tmin, double tmax, std::size_t points, Spacing spacing) {
  if (!(tmin > 0.0) || !(tmax > tmin) || !std::isfinite(tmax)) {
    throw ParameterError("time grid requires 0 < tmin < tmax");
  }
  if (points < 2) throw ParameterError("time grid requires at least 2 points");
  std::vector<double> times(points);
  const double last = static_cast<double>(points - 1);
  if (spacing == Spacing::log) {
    const double l0 = std::log(tmin);
    const double l1 = std::log(tmax);
    for (std::size_t i = 0; i < points; ++i) {
      times[i] = std::exp(l0 + (l1 - l0) * static_cast<double>(i) / last);
    }
  } else {
    for (std::size_t i = 0; i < points; ++i) {
      times[i] = tmin + (tmax - tmin) * static_cast<double>(i) / last;
    }
  }
  times.front() = tmin;
  times.back() = tmax;
  return times;
}

DecayCurve sample_curve(const ModelId& model, const Context& ctx, double tmin, double tmax,
                        std::size_t points, Spacing spacing, unsigned threads) {
  return sample_curve(model, ctx, time_grid(tmin, tmax, points, spacing), threads);
}

DecayCurve sample_curve(const ModelId& model, const Context& ctx, const std::vector<double>& times,
                        unsigned threads) {
  for (std::size_t i = 1; i < times.size(); ++i) {
    if (!(times[i] > times[i - 1])) throw ParameterError("sample_curve: times must be strictly increasing");
  }
  DecayCurve curve;
  curve.model = model;
  curve.times = times;
  const std::size_t n = times.size();
  std::vector<double> decays(n);

  auto work = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) decays[i] = decay(model, ctx, times[i]);
  };
  const std::size_t workers = std::clamp<std::size_t>(threads, 1, std::max<std::size_t>(n, 1));
  if (workers == 1) {
    work(0, n);
  } else {
    std::vector<std::exception_ptr> errors(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::size_t chunk = (n + workers - 1) / workers;
    for (std::size_t w = 0; w < workers; ++w) {
      const std::size_t begin = std::min(n, w * chunk);
      const std::size_t end = std::min(n, begin + chunk);
      pool.emplace_back([&, w, begin, end] {
        try {
          work(begin, end);
        } catch (...) {
          errors[w] = std::current_exception();
        }
      });
    }
    for (auto& th : pool) th.join();
    for (const auto& e : errors) {
      if (e) std::rethrow_exception(e);
    }
  }

  curve.decay = std::move(decays);
  curve.survival.resize(n);
  curve.flagged.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    const double d = curve.decay[i];
    if (!std::isfinite(d)) {
      throw AnalysisError("sample_curve: non-finite sample for model " + model.name());
    }
    curve.survival[i] = 1.0 - d;
    curve.flagged[i] = d > perturbative_limit;
  }
  return curve;
}

Deviation max_deviation(const DecayCurve& a, const DecayCurve& b) {
  require_same_grid(a, b);
  Deviation best;
  best.time = a.times.front();
  best.value = -1.0;
  for (std::size_t i = 0; i < a.times.size(); ++i) {
    const double gap = std::abs(a.survival[i] - b.survival[i]);
    if (gap > best.value) {
      best.value = gap;
      best.time = a.times[i];
      const double scale = std::max(a.decay[i], b.decay[i]);
      best.relative = scale > 0.0 ? std::abs(a.decay[i] - b.decay[i]) / scale : 0.0;
    }
  }
  return best;
}

Deviation max_deviation(const DecayCurve& a, const DecayCurve& b, const Context& ctx) {
  require_same_grid(a, b);
  const auto& times = a.times;
  std::size_t best_index = 0;
  double best_gap = -1.0;
  for (std::size_t i = 0; i < times.size(); ++i) {
    const double gap = std::abs(a.survival[i] - b.survival[i]);
    if (gap > best_gap) {
      best_gap = gap;
      best_index = i;
    }
  }

  auto evaluate = [&](double t) {
    Deviation d;
    d.time = t;
    const double da = decay(a.model, ctx, t);
    const double db = decay(b.model, ctx, t);
    d.value = std::abs((1.0 - da) - (1.0 - db));
    const double scale = std::max(da, db);
    d.relative = scale > 0.0 ? std::abs(da - db) / scale : 0.0;
    return d;
  };

  Deviation best = evaluate(times[best_index]);
  double lo = times[best_index == 0 ? 0 : best_index - 1];
  double hi = times[std::min(best_index + 1, times.size() - 1)];
  for (int round = 0; round < 3; ++round) {
    const double left = lo > 0.0 ? geometric_mid(lo, best.time) : 0.5 * (lo + best.time);
    const double right = geometric_mid(best.time, hi);
    const Deviation dl = evaluate(left);
    const Deviation dr = evaluate(right);
    if (dl.value > best.value && dl.value >= dr.value) {
      hi = best.time;
      best = dl;
    } else if (dr.value > best.value) {
      lo = best.time;
      best = dr;
    } else {
      lo = left;
      hi = right;
    }
  }
  return best;
}

Deviation max_relative_decay_deviation(const DecayCurve& a, const DecayCurve& b) {
  require_same_grid(a, b);
  Deviation best;
  best.time = a.times.front();
  best.relative = -1.0;
  for (std::size_t i = 0; i < a.times.size(); ++i) {
    const double scale = std::max(a.decay[i], b.decay[i]);
    const double rel = scale > 0.0 ? std::abs(a.decay[i] - b.decay[i]) / scale : 0.0;
    if (rel > best.relative) {
      best.relative = rel;
      best.time = a.times[i];
      best.value = std::abs(a.survival[i] - b.survival[i]);
    }
  }
  return best;
}

RegimeReport regime_report(const Context& ctx, const RegimeOptions& options) {
  const auto& p = ctx.params;
  RegimeReport report;
  report.tau_zeno = std::sqrt(6.0) / (std::sqrt(p.lambda_sq) * p.omegaX);

  const double gamma = model::golden_rule_gamma(p, ctx.coeffs);
  auto exact = [&](double t) { return decay(ModelId::exact(), ctx, t); };
  auto leaves_zeno = [&](double t) {
    return std::abs(exact(t) / closedform::zeno_asymptote(p, t) - 1.0) > options.zeno_tolerance;
  };
  auto off_golden = [&](double t) {
    return std::abs(exact(t) / (gamma * t) - 1.0) > options.golden_tolerance;
  };

  const auto grid = time_grid(options.scan_tmin, options.scan_tmax, options.scan_points, Spacing::log);

  const auto first_exit = std::find_if(grid.begin(), grid.end(), leaves_zeno);
  if (first_exit == grid.end() || first_exit == grid.begin()) {
    throw AnalysisError("regime_report: tau_cutoff not bracketed by the scan grid");
  }
  report.tau_cutoff = locate_crossing(*(first_exit - 1), *first_exit, leaves_zeno);

  const auto last_off = std::find_if(grid.rbegin(), grid.rend(), off_golden);
  if (last_off == grid.rbegin()) {
    throw AnalysisError("regime_report: transition_time not reached before the end of the scan grid");
  }
  if (last_off == grid.rend()) {
    throw AnalysisError("regime_report: transition_time precedes the scan grid");
  }
  const double off = *last_off;
  const double on = *(last_off - 1);
  report.transition_time =
      locate_crossing(off, on, [&](double t) { return !off_golden(t); });

  if (!(report.tau_cutoff < report.transition_time)) {
    throw AnalysisError("regime_report: tau_cutoff does not precede transition_time");
  }

  const auto exact_curve = sample_curve(ModelId::exact(), ctx, options.deviation_tmin,
                                        options.deviation_tmax, options.deviation_points, Spacing::log);
  const auto golden_curve = sample_curve(ModelId::golden_rule_linear(), ctx, exact_curve.times);
  const Deviation dev = max_deviation(exact_curve, golden_curve, ctx);
  report.max_deviation = dev.value;
  report.max_deviation_time = dev.time;
  report.max_relative_deviation = max_relative_decay_deviation(exact_curve, golden_curve).relative;
  report.zeno_strength = report.tau_cutoff / report.tau_zeno;
  return report;
}

}  // namespace hdecay::analysis

#include <algorithm>
#include <charconv>
#include <cmath>
#include <complex>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>

#include "hdecay/closedform.hpp"
#include "hdecay/errors.hpp"
#include "hdecay/kernels.hpp"
#include "hdecay/quadrature.hpp"
#include "hdecay/specfun.hpp"
#include "hdecay_cli/cli.hpp"

namespace hdecay::cli {

namespace {

using analysis::ModelId;

std::vector<double> log_grid(double a, double b, std::size_t n) {
  return analysis::time_grid(a, b, n, analysis::Spacing::log);
}

std::string worst(double value, double limit) {
  return "worst " + format_double(value) + " (limit " + format_double(limit) + ")";
}

CheckResult bounded(std::string name, double value, double limit) {
  return {std::move(name), value <= limit, worst(value, limit)};
}

class Suite {
 public:
  explicit Suite(const analysis::Context& ctx) : ctx_(ctx), p_(ctx.params) {}

  std::vector<CheckResult> run() {
    guarded("specfun: Si odd", [this] { return si_odd(); });
    guarded("specfun: cin consistency", [this] { return cin_consistency(); });
    guarded("specfun: scaled Ei tails", [this] { return scaled_tails(); });
    guarded("specfun: Si derivative", [this] { return si_derivative(); });
    guarded("model: pole identity", [this] { return pole_identity(); });
    guarded("model: conjugation", [this] { return conjugation(); });
    guarded("model: scale covariance", [this] { return scale_covariance(); });
    guarded("kernels: exact <= dipole", [this] { return kernel_bound(); });
    guarded("kernels: sinc zeros", [this] { return kernel_zeros(); });
    guarded("quadrature: cutoff monotonicity", [this] { return cutoff_monotone(); });
    guarded("quadrature: tolerance halving", [this] { return tolerance_halving(); });
    guarded("quadrature: tail extension", [this] { return tail_extension(); });
    guarded("closedform: oracle equivalence", [this] { return oracle_equivalence(); });
    guarded("closedform: branch continuity", [this] { return branch_continuity(); });
    guarded("closedform: positivity", [this] { return positivity(); });
    guarded("closedform: golden-rule seed", [this] { return golden_seed(); });
    guarded("analysis: perturbative window", [this] { return perturbative_window(); });
    guarded("analysis: curve monotonicity", [this] { return curve_monotone(); });
    guarded("analysis: Zeno ordering", [this] { return zeno_ordering(); });
    guarded("analysis: golden-rule envelope", [this] { return golden_envelope(); });
    guarded("analysis: regime ordering", [this] { return regime_ordering(); });
    guarded("cli: thread determinism", [this] { return thread_determinism(); });
    guarded("cli: round trip", [this] { return round_trip(); });
    return std::move(results_);
  }

 private:
  void guarded(const std::string& name, const std::function<CheckResult()>& check) {
    try {
      auto r = check();
      r.name = name;
      results_.push_back(std::move(r));
    } catch (const std::exception& e) {
      results_.push_back({name, false, std::string("threw: ") + e.what()});
    }
  }

  CheckResult si_odd() {
    std::mt19937_64 rng(7);
    std::uniform_real_distribution<double> dist(0.0, 1e4);
    int mismatches = 0;
    for (int i = 0; i < 1000; ++i) {
      const double x = dist(rng);
      if (specfun::sin_integral(-x) != -specfun::sin_integral(x)) ++mismatches;
    }
    return {"", mismatches == 0, std::to_string(mismatches) + " mismatches of 1000"};
  }

  CheckResult cin_consistency() {
    double err = 0.0;
    for (double x : log_grid(1e-3, 1e3, 200)) {
      err = std::max(err, std::abs(specfun::euler_gamma + std::log(x) - specfun::cos_integral(x) -
                                   specfun::cin(x)));
    }
    return bounded("", err, 1e-12);
  }

  CheckResult scaled_tails() {
    const auto xs = log_grid(2.0, 1e8, 100);
    int violations = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double ei = specfun::expei_scaled(xs[i]);
      const double e1 = specfun::e1_scaled(xs[i]);
      if (!(ei > 0.0) || !(e1 > 0.0)) ++violations;
      if (i > 0 && !(ei < specfun::expei_scaled(xs[i - 1]) && e1 < specfun::e1_scaled(xs[i - 1]))) {
        ++violations;
      }
    }
    return {"", violations == 0, std::to_string(violations) + " violations"};
  }

  CheckResult si_derivative() {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> dist(0.1, 50.0);
    double err = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double x = dist(rng);
      const double h = 1e-6 * std::max(1.0, std::abs(x));
      const double fd = (specfun::sin_integral(x + h) - specfun::sin_integral(x - h)) / (2.0 * h);
      const double sinc = std::sin(x) / x;
      // Relative to the local amplitude 1/x so sinc zeros do not dominate.
      err = std::max(err, std::abs(fd - sinc) / std::max(std::abs(sinc), 1.0 / x));
    }
    return bounded("", err, 1e-6);
  }

  CheckResult pole_identity() {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> dist(0.0, 10.0);
    double err = std::abs(ctx_.coeffs.a0c + 2.0 * ctx_.coeffs.b0.real());
    for (int i = 0; i < 1000; ++i) {
      double r = dist(rng);
      if (r == 0.0) r = 10.0;
      const auto c = model::residue_coefficients(with_ratio(r));
      err = std::max(err, std::abs(c.a0c + 2.0 * c.b0.real()));
    }
    return bounded("", err, 1e-13);
  }

  CheckResult conjugation() {
    // omega0 -> -omega0 conjugates every B_k.
    double err = 0.0;
    for (double r : {1e-3, ctx_.params.ratio, 0.3, 1.0, 4.0}) {
      const auto plus = model::residue_coefficients(with_ratio(r));
      const auto minus = model::detail::signed_residue_coefficients(with_ratio(-r));
      const std::complex<double> bp[] = {plus.b0, plus.b1, plus.b2, plus.b3};
      const std::complex<double> bm[] = {minus.b0, minus.b1, minus.b2, minus.b3};
      for (int k = 0; k < 4; ++k) {
        err = std::max(err, std::abs(bm[k] - std::conj(bp[k])) / std::abs(bp[k]));
      }
    }
    return bounded("", err, 1e-13);
  }

  CheckResult scale_covariance() {
    const double s = 10.0;
    auto scaled = p_;
    scaled.omega0 *= s;
    scaled.omegaX *= s;
    const auto a = ctx_.coeffs;
    const auto b = model::residue_coefficients(scaled);
    auto rel = [](std::complex<double> x, std::complex<double> y) { return std::abs(x - y) / std::abs(y); };
    double err = std::abs(b.a0c - a.a0c) / std::abs(a.a0c);
    err = std::max(err, rel(b.a1c, s * a.a1c));
    err = std::max(err, rel(b.b0, a.b0));
    err = std::max(err, rel(b.b1, s * a.b1));
    err = std::max(err, rel(b.b2, s * s * a.b2));
    err = std::max(err, rel(b.b3, s * s * s * a.b3));
    return bounded("", err, 1e-12);
  }

  CheckResult kernel_bound() {
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> lw(-4.0, 2.0);
    std::uniform_real_distribution<double> lt(-22.0, -12.0);
    int violations = 0;
    for (int i = 0; i < 10000; ++i) {
      const double w = p_.omegaX * std::pow(10.0, lw(rng));
      const double t = std::pow(10.0, lt(rng));
      if (kernels::exact_integrand(w, t, p_) > kernels::dipole_integrand(w, t, p_)) ++violations;
    }
    return {"", violations == 0, std::to_string(violations) + " violations of 10000"};
  }

  CheckResult kernel_zeros() {
    double err = 0.0;
    for (double w0t : {1.0, 10.0, 100.0, 1000.0}) {
      const double t = w0t / p_.omega0;
      for (int k = 1; k <= 10; ++k) {
        for (int sign : {-1, 1}) {
          const double w = p_.omega0 + sign * 2.0 * std::numbers::pi * k / t;
          err = std::max({err, std::abs(kernels::dipole_integrand(w, t, p_)),
                          std::abs(kernels::exact_integrand(w, t, p_))});
        }
      }
    }
    return bounded("", err / p_.omega0, 1e-12);
  }

  CheckResult cutoff_monotone() {
    const double t = 1e-17;
    double previous = 0.0;
    int violations = 0;
    for (double wc : log_grid(1.01 * p_.omega0, 3.0 * p_.omegaX, 20)) {
      const double v = quadrature::integrate_truncated_dipole(p_, wc, t, 1e-12).value;
      if (v < previous) ++violations;
      previous = v;
    }
    return {"", violations == 0, std::to_string(violations) + " decreases on 20 cutoffs"};
  }

  CheckResult tolerance_halving() {
    std::mt19937_64 rng(19);
    std::uniform_real_distribution<double> lx(-2.0, 4.0);
    std::uniform_real_distribution<double> ltol(-10.0, -4.0);
    double ratio = 0.0;
    for (int i = 0; i < 50; ++i) {
      const double t = std::pow(10.0, lx(rng)) / p_.omegaX;
      const double tol = std::pow(10.0, ltol(rng));
      const auto coarse = quadrature::integrate_exact(p_, t, tol);
      const auto fine = quadrature::integrate_exact(p_, t, tol / 2.0);
      ratio = std::max(ratio, std::abs(fine.value - coarse.value) / coarse.abs_error_estimate);
    }
    return bounded("", ratio, 1.0);
  }

  CheckResult tail_extension() {
    double err = 0.0;
    const double tol = 1e-10;
    quadrature::QuadratureOptions doubled;
    doubled.truncation_scale = 2.0;
    for (double x : {0.0, 1e-2, 1.0, 1e2, 1e4, 1e6}) {
      const double t = x / p_.omegaX;
      const auto a = quadrature::integrate_exact(p_, t, tol);
      const auto b = quadrature::integrate_exact(p_, t, tol, doubled);
      err = std::max(err, std::abs(a.value - b.value) / (tol * a.value));
    }
    return bounded("", err, 1.0);
  }

  CheckResult oracle_equivalence() {
    double err = 0.0;
    for (double x : log_grid(1e-2, 1e6, 60)) {
      const double t = x / p_.omegaX;
      const double cf = closedform::exact_IF(p_, ctx_.coeffs, t).value;
      const double q = quadrature::integrate_exact(p_, t, 1e-11).value;
      err = std::max(err, std::abs(cf - q) / q);
    }
    return bounded("", err, 1e-8);
  }

  CheckResult branch_continuity() {
    const double seam = closedform::series_threshold / p_.omegaX;
    const auto below = closedform::exact_IF(p_, ctx_.coeffs, seam * (1.0 - 1e-12));
    const auto above = closedform::exact_IF(p_, ctx_.coeffs, seam * (1.0 + 1e-12));
    if (below.branch != closedform::Branch::series_small_t ||
        above.branch != closedform::Branch::full_expression) {
      return {"", false, "seam does not separate the branches"};
    }
    return bounded("", std::abs(below.scaled - above.scaled) / above.scaled, 1e-6);
  }

  CheckResult positivity() {
    int violations = 0;
    const double wc = closedform::matched_cutoff(p_);
    for (double t : log_grid(1e-22, 1e-9, 300)) {
      if (closedform::exact_IF(p_, ctx_.coeffs, t).scaled < 0.0) ++violations;
      if (closedform::dipole_regularized(p_, t).scaled < 0.0) ++violations;
      if (closedform::truncated_dipole_closed(p_, wc, t).scaled < 0.0) ++violations;
      if (closedform::zeno_asymptote(p_, t) < 0.0) ++violations;
    }
    return {"", violations == 0, std::to_string(violations) + " negative values"};
  }

  CheckResult golden_seed() {
    // Relative gap to the golden-rule line shrinks steadily and is below 1e-2
    // from 1e-14 s on.
    const double seed_rate = 2.0 * std::numbers::pi * std::abs(ctx_.coeffs.a1c);
    double previous = std::numeric_limits<double>::infinity();
    double worst_late = 0.0;
    int increases = 0;
    for (double t : log_grid(1e-15, 1e-12, 31)) {
      const double v = closedform::exact_IF(p_, ctx_.coeffs, t).scaled;
      const double gap = std::abs((v - seed_rate * t) / v);
      if (gap > previous) ++increases;
      previous = gap;
      if (t >= 1e-14) worst_late = std::max(worst_late, gap);
    }
    return {"", increases == 0 && worst_late < 1e-2,
            worst(worst_late, 1e-2) + ", " + std::to_string(increases) + " increases"};
  }

  CheckResult perturbative_window() {
    int mismatches = 0;
    int flagged = 0;
    for (const auto& m : physical_models()) {
      const auto c = analysis::sample_curve(m, ctx_, 1e-20, 1e-13, 400, analysis::Spacing::log);
      for (std::size_t i = 0; i < c.times.size(); ++i) {
        if (c.flagged[i] != (c.decay[i] > analysis::perturbative_limit)) ++mismatches;
        if (c.flagged[i]) ++flagged;
      }
    }
    return {"", mismatches == 0,
            std::to_string(mismatches) + " unflagged, " + std::to_string(flagged) + " flagged samples"};
  }

  CheckResult curve_monotone() {
    int violations = 0;
    for (const auto& m : {ModelId::exact(), ModelId::golden_rule_linear(), ModelId::zeno()}) {
      const auto c = analysis::sample_curve(m, ctx_, 1e-20, 1e-13, 400, analysis::Spacing::log);
      for (std::size_t i = 0; i < c.times.size(); ++i) {
        if (!c.flagged[i] && (c.survival[i] < 0.0 || c.survival[i] > 1.0)) ++violations;
        if (i > 0 && c.survival[i] > c.survival[i - 1]) ++violations;
      }
    }
    return {"", violations == 0, std::to_string(violations) + " violations"};
  }

  CheckResult zeno_ordering() {
    const double t = 1e-3 / p_.omegaX;
    const auto cut = ModelId::dipole_cutoff(closedform::matched_cutoff(p_));
    const double ratio = analysis::decay(cut, ctx_, t) / analysis::decay(ModelId::exact(), ctx_, t);
    return bounded("", std::abs(ratio - 1.0), 1e-3);
  }

  CheckResult golden_envelope() {
    // The one-sided bound exact <= golden fails (exact approaches from above);
    // the two-sided 1% band is what holds.
    double err = 0.0;
    for (double t : log_grid(1e-14, 1e-13, 200)) {
      const double ratio = analysis::decay(ModelId::exact(), ctx_, t) /
                           analysis::decay(ModelId::golden_rule_linear(), ctx_, t);
      err = std::max(err, std::abs(ratio - 1.0));
    }
    return bounded("", err, 1e-2);
  }

  CheckResult regime_ordering() {
    const auto r = analysis::regime_report(ctx_);
    const bool ok = r.tau_cutoff < r.transition_time &&
                    std::abs(r.zeno_strength - r.tau_cutoff / r.tau_zeno) <= 1e-15 * r.zeno_strength;
    return {"", ok,
            "tau_cutoff " + format_double(r.tau_cutoff) + " s, transition " +
                format_double(r.transition_time) + " s"};
  }

  CheckResult thread_determinism() {
    const auto times = log_grid(1e-20, 1e-13, 257);
    const auto one = analysis::sample_curve(ModelId::exact(), ctx_, times, 1);
    const auto four = analysis::sample_curve(ModelId::exact(), ctx_, times, 4);
    return {"", one.decay == four.decay && one.survival == four.survival, ""};
  }

  CheckResult round_trip() {
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> mant(1.0, 10.0);
    std::uniform_int_distribution<int> expo(-300, 300);
    int mismatches = 0;
    for (int i = 0; i < 1000; ++i) {
      const double v = mant(rng) * std::pow(10.0, expo(rng));
      const std::string s = format_double(v);
      double back = 0.0;
      std::from_chars(s.data(), s.data() + s.size(), back);
      if (back != v) ++mismatches;
    }
    return {"", mismatches == 0, std::to_string(mismatches) + " mismatches of 1000"};
  }

  std::vector<ModelId> physical_models() const {
    return {ModelId::exact(), ModelId::dipole_regularized(),
            ModelId::dipole_cutoff(closedform::matched_cutoff(p_)), ModelId::golden_rule_linear(),
            ModelId::golden_rule_exponential(), ModelId::zeno()};
  }

  model::TransitionParams with_ratio(double r) const {
    auto q = p_;
    q.omega0 = r * p_.omegaX;
    q.ratio = r;
    return q;
  }

  const analysis::Context& ctx_;
  const model::TransitionParams& p_;
  std::vector<CheckResult> results_;
};

}  // namespace

std::vector<CheckResult> run_invariant_suite(const analysis::Context& ctx) { return Suite(ctx).run(); }

}  // namespace hdecay::cli

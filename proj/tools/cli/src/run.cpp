#include <cmath>
#include <complex>
#include <fstream>
#include <ostream>
#include <sstream>
#include <utility>

#include "hdecay/closedform.hpp"
#include "hdecay/errors.hpp"
#include "hdecay_cli/cli.hpp"

namespace hdecay::cli {

namespace {

using analysis::ModelId;
using analysis::ModelKind;

ModelId make_model(const RunConfig& config, const analysis::Context& ctx) {
  if (*config.model == ModelKind::dipole_cutoff) {
    const double omegaC = config.cutoff.value_or(closedform::matched_cutoff(ctx.params));
    if (!(omegaC > ctx.params.omega0)) {
      throw UsageError("--cutoff must exceed omega0 = " + format_double(ctx.params.omega0) + " rad/s");
    }
    return ModelId::dipole_cutoff(omegaC);
  }
  switch (*config.model) {
    case ModelKind::exact: return ModelId::exact();
    case ModelKind::dipole_regularized: return ModelId::dipole_regularized();
    case ModelKind::golden_rule_linear: return ModelId::golden_rule_linear();
    case ModelKind::golden_rule_exponential: return ModelId::golden_rule_exponential();
    case ModelKind::zeno: return ModelId::zeno();
    case ModelKind::dipole_cutoff: break;
  }
  throw UsageError("unknown model");
}

void write_constants(const analysis::Context& ctx, std::ostream& out) {
  const auto& p = ctx.params;
  const auto& c = ctx.coeffs;
  const model::PhysicalConstants constants;
  const double gamma = model::golden_rule_gamma(p, c);
  const std::vector<std::pair<std::string, double>> entries{
      {"alpha", constants.alpha},
      {"c_m_per_s", constants.c},
      {"a0_m", constants.a0},
      {"omega0_rad_per_s", p.omega0},
      {"omegaX_rad_per_s", p.omegaX},
      {"inv_omegaX_s", 1.0 / p.omegaX},
      {"ratio", p.ratio},
      {"lambda_sq", p.lambda_sq},
      {"gamma_fermi_per_s", p.gamma_fermi},
      {"lifetime_s", 1.0 / gamma},
      {"exponential_weight", analysis::exponential_weight(p)},
      {"matched_cutoff_rad_per_s", closedform::matched_cutoff(p)},
      {"a0c", c.a0c},
      {"a1c_re", c.a1c.real()},
      {"a1c_im", c.a1c.imag()},
      {"b0_re", c.b0.real()},
      {"b0_im", c.b0.imag()},
      {"b1_re", c.b1.real()},
      {"b1_im", c.b1.imag()},
      {"b2_re", c.b2.real()},
      {"b2_im", c.b2.imag()},
      {"b3_re", c.b3.real()},
      {"b3_im", c.b3.imag()},
      {"dipole_limit_relative_error", std::abs(c.a1c * std::complex<double>(0.0, 1.0) - p.omega0) / p.omega0},
  };
  out << "key,value\n";
  for (const auto& [key, value] : entries) out << key << ',' << format_double(value) << '\n';
}

CsvTable curve_table(const RunConfig& config, const analysis::Context& ctx) {
  const auto model = make_model(config, ctx);
  const double scale = config.time_unit == TimeUnit::omegaX_t ? 1.0 / ctx.params.omegaX : 1.0;
  const auto grid = analysis::time_grid(config.tmin, config.tmax, config.points, config.spacing);
  std::vector<double> times(grid.size());
  for (std::size_t i = 0; i < grid.size(); ++i) times[i] = grid[i] * scale;
  const auto curve = analysis::sample_curve(model, ctx, times, config.threads);
  CsvTable table;
  table.header = {config.time_unit == TimeUnit::omegaX_t ? "omegaX_t" : "t", "survival", "decay"};
  for (std::size_t i = 0; i < times.size(); ++i) {
    table.rows.push_back({grid[i], curve.survival[i], curve.decay[i]});
  }
  return table;
}

void write_verify(const std::vector<CheckResult>& checks, std::ostream& out) {
  for (const auto& check : checks) {
    out << (check.passed ? "PASS " : "FAIL ") << check.name;
    if (!check.detail.empty()) out << "  " << check.detail;
    out << '\n';
  }
}

}  // namespace

CsvTable figure_table(int id, const analysis::Context& ctx, std::optional<std::size_t> points,
                      unsigned threads) {
  const auto& p = ctx.params;
  const std::size_t n = points.value_or(400);
  CsvTable table;

  auto reduced = [&](double xmin, double xmax) {
    const auto xs = analysis::time_grid(xmin, xmax, n, analysis::Spacing::log);
    std::vector<double> times(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) times[i] = xs[i] / p.omegaX;
    const auto exact = analysis::sample_curve(ModelId::exact(), ctx, times, threads);
    const auto expo = analysis::sample_curve(ModelId::golden_rule_exponential(), ctx, times, threads);
    for (std::size_t i = 0; i < xs.size(); ++i) {
      const double e = exact.decay[i] / p.lambda_sq;
      const double z = expo.decay[i] / p.lambda_sq;
      if (id == 2) {
        table.rows.push_back({xs[i], e, z});
      } else {
        table.rows.push_back({xs[i], e, z, e - z});
      }
    }
  };

  switch (id) {
    case 2:
      table.header = {"omegaX_t", "exact_decay_over_lambda_sq", "exponential_decay_over_lambda_sq"};
      reduced(1e-2, 1e2);
      break;
    case 3:
      table.header = {"omegaX_t", "exact_decay_over_lambda_sq", "exponential_decay_over_lambda_sq",
                      "nonexponential_over_lambda_sq"};
      reduced(1e-2, 1e2);
      break;
    case 4: {
      table.header = {"t", "survival_dipole_regularized", "survival_exact", "survival_golden_rule_linear"};
      const auto times = analysis::time_grid(1e-20, 1e-13, n, analysis::Spacing::log);
      const auto reg = analysis::sample_curve(ModelId::dipole_regularized(), ctx, times, threads);
      const auto exact = analysis::sample_curve(ModelId::exact(), ctx, times, threads);
      const auto golden = analysis::sample_curve(ModelId::golden_rule_linear(), ctx, times, threads);
      for (std::size_t i = 0; i < times.size(); ++i) {
        table.rows.push_back({times[i], reg.survival[i], exact.survival[i], golden.survival[i]});
      }
      break;
    }
    case 5: {
      table.header = {"t", "decay_exact", "decay_golden_rule_linear", "decay_zeno",
                      "decay_dipole_regularized", "decay_dipole_cutoff_matched"};
      const auto times = analysis::time_grid(1e-21, 1e-13, n, analysis::Spacing::log);
      const std::vector<ModelId> models{ModelId::exact(), ModelId::golden_rule_linear(), ModelId::zeno(),
                                        ModelId::dipole_regularized(),
                                        ModelId::dipole_cutoff(closedform::matched_cutoff(p))};
      std::vector<analysis::DecayCurve> curves;
      for (const auto& m : models) curves.push_back(analysis::sample_curve(m, ctx, times, threads));
      for (std::size_t i = 0; i < times.size(); ++i) {
        std::vector<double> row{times[i]};
        for (const auto& c : curves) row.push_back(c.decay[i]);
        table.rows.push_back(std::move(row));
      }
      break;
    }
    default:
      throw UsageError("--id must be one of 2, 3, 4, 5");
  }
  return table;
}

int run(const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    validate(config);
    const auto ctx = analysis::hydrogen_context();
    switch (config.command) {
      case Command::constants:
        write_constants(ctx, out);
        return exit_ok;
      case Command::curve:
        write_csv(curve_table(config, ctx), out);
        return exit_ok;
      case Command::figure:
        write_csv(figure_table(config.figure_id, ctx, config.figure_points, config.threads), out);
        return exit_ok;
      case Command::verify: {
        const auto checks = run_invariant_suite(ctx);
        write_verify(checks, out);
        for (const auto& c : checks) {
          if (!c.passed) return exit_numerical;
        }
        return exit_ok;
      }
    }
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const ParameterError& e) {
    err << "error: " << e.what() << '\n';
    return exit_usage;
  } catch (const ConvergenceError& e) {
    err << "numerical failure: " << e.what() << " (best estimate " << format_double(e.best_value())
        << ", error " << format_double(e.best_error()) << ")\n";
    return exit_numerical;
  } catch (const std::exception& e) {
    err << "numerical failure: " << e.what() << '\n';
    return exit_numerical;
  }
  return exit_usage;
}

int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  const auto parsed = parse(argc, argv);
  if (!parsed.config) {
    (parsed.exit_code == exit_ok ? out : err) << parsed.message;
    return parsed.exit_code;
  }
  const auto& config = *parsed.config;
  if (!config.output) return run(config, out, err);

  std::ostringstream buffer;
  const int status = run(config, buffer, err);
  if (status != exit_ok && config.command != Command::verify) return status;
  std::ofstream file(*config.output, std::ios::binary);
  if (!file) {
    err << "error: cannot open " << *config.output << " for writing\n";
    return exit_usage;
  }
  file << buffer.str();
  return status;
}

}  // namespace hdecay::cli

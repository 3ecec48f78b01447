#include <cmath>
#include <map>
#include <sstream>

#include "CLI11.hpp"
#include "hdecay_cli/cli.hpp"

namespace hdecay::cli {

namespace {

const std::map<std::string, analysis::Spacing> spacing_names{
    {"log", analysis::Spacing::log}, {"linear", analysis::Spacing::linear}};
const std::map<std::string, TimeUnit> time_unit_names{
    {"seconds", TimeUnit::seconds}, {"omegaX_t", TimeUnit::omegaX_t}};
const std::vector<std::string> model_names{"exact",
                                           "dipole_regularized",
                                           "dipole_cutoff",
                                           "golden_rule_linear",
                                           "golden_rule_exponential",
                                           "zeno"};

}  // namespace

ParseResult parse(int argc, const char* const* argv) {
  CLI::App app{"First-order survival probability of the hydrogen 2p-1s transition", "hdecay"};
  app.require_subcommand(1);

  RunConfig config;
  std::string model_name;
  std::string output;
  std::size_t figure_points = 0;

  auto add_output = [&](CLI::App* sub) {
    sub->add_option("-o,--output", output, "Write CSV to this path instead of standard output");
  };

  auto* constants = app.add_subcommand("constants", "Transition parameters and residue coefficients");
  add_output(constants);

  auto* curve = app.add_subcommand("curve", "Survival and decay probability of one model");
  curve->add_option("--model", model_name, "Model name")
      ->required()
      ->check(CLI::IsMember(model_names));
  curve->add_option("--tmin", config.tmin, "First time in units of --time-unit")->capture_default_str();
  curve->add_option("--tmax", config.tmax, "Last time in units of --time-unit")->capture_default_str();
  curve->add_option("--points", config.points, "Number of samples")->capture_default_str();
  curve->add_option("--spacing", config.spacing, "Grid spacing")
      ->transform(CLI::CheckedTransformer(spacing_names, CLI::ignore_case));
  curve->add_option("--cutoff", config.cutoff, "Cutoff frequency omegaC [rad/s] for dipole_cutoff");
  curve->add_option("--time-unit", config.time_unit, "Unit of --tmin/--tmax and of the time column")
      ->transform(CLI::CheckedTransformer(time_unit_names, CLI::ignore_case));
  curve->add_option("--threads", config.threads, "Worker threads for sampling")->capture_default_str();
  add_output(curve);

  auto* figure = app.add_subcommand("figure", "Dataset behind one figure");
  figure->add_option("--id", config.figure_id, "Figure number")
      ->required()
      ->check(CLI::IsMember({2, 3, 4, 5}));
  figure->add_option("--points", figure_points, "Override the default number of samples");
  figure->add_option("--threads", config.threads, "Worker threads for sampling")->capture_default_str();
  add_output(figure);

  auto* verify = app.add_subcommand("verify", "Run the invariant suite");
  add_output(verify);

  ParseResult result;
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out;
    std::ostringstream err;
    const int code = app.exit(e, out, err);
    result.exit_code = code == 0 ? exit_ok : exit_usage;
    result.message = out.str() + err.str();
    return result;
  }

  if (constants->parsed()) config.command = Command::constants;
  if (curve->parsed()) {
    config.command = Command::curve;
    config.model = analysis::parse_model_kind(model_name);
  }
  if (figure->parsed()) {
    config.command = Command::figure;
    if (figure->count("--points")) config.figure_points = figure_points;
  }
  if (verify->parsed()) config.command = Command::verify;
  if (!output.empty()) config.output = output;

  result.config = config;
  return result;
}

void validate(const RunConfig& config) {
  if (config.threads == 0) throw UsageError("--threads must be at least 1");
  switch (config.command) {
    case Command::curve:
      if (!config.model) throw UsageError("curve requires --model");
      if (!(config.tmin > 0.0) || !std::isfinite(config.tmin)) {
        throw UsageError("--tmin must be positive and finite");
      }
      if (!(config.tmax > config.tmin) || !std::isfinite(config.tmax)) {
        throw UsageError("--tmax must be finite and greater than --tmin");
      }
      if (config.points < 2) throw UsageError("--points must be at least 2");
      if (config.cutoff) {
        if (*config.model != analysis::ModelKind::dipole_cutoff) {
          throw UsageError("--cutoff only applies to --model dipole_cutoff");
        }
        if (!(*config.cutoff > 0.0) || !std::isfinite(*config.cutoff)) {
          throw UsageError("--cutoff must be positive and finite");
        }
      }
      break;
    case Command::figure:
      if (config.figure_id < 2 || config.figure_id > 5) throw UsageError("--id must be one of 2, 3, 4, 5");
      if (config.figure_points && *config.figure_points < 2) throw UsageError("--points must be at least 2");
      break;
    case Command::constants:
    case Command::verify:
      break;
  }
}

}  // namespace hdecay::cli

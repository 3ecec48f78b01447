#pragma once

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "hdecay/analysis.hpp"

namespace hdecay::cli {

enum class Command { constants, curve, figure, verify };
enum class TimeUnit { seconds, omegaX_t };

inline constexpr int exit_ok = 0;
inline constexpr int exit_usage = 2;
inline constexpr int exit_numerical = 3;

struct RunConfig {
  Command command = Command::constants;
  std::optional<analysis::ModelKind> model;  ///< required by curve
  double tmin = 1e-20;                       ///< in units of time_unit
  double tmax = 1e-13;
  std::size_t points = 200;
  analysis::Spacing spacing = analysis::Spacing::log;
  std::optional<double> cutoff;  ///< rad/s; dipole_cutoff defaults to omegaX/sqrt(3)
  TimeUnit time_unit = TimeUnit::seconds;
  std::optional<std::string> output;  ///< standard output when unset
  int figure_id = 0;
  std::optional<std::size_t> figure_points;  ///< overrides the figure's default resolution
  unsigned threads = 1;
};

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct ParseResult {
  std::optional<RunConfig> config;  ///< empty when parsing ended the run (help, error)
  int exit_code = exit_ok;
  std::string message;  ///< help text or diagnostic
};

ParseResult parse(int argc, const char* const* argv);

/// Throws UsageError on an inconsistent configuration.
void validate(const RunConfig& config);

/// Writes the command's output to `out`; diagnostics go to `err`.
/// Returns one of the exit_* codes.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

/// parse + validate + run, honouring --output.
int main_entry(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Shortest scientific notation with 17 significant digits, locale independent.
std::string format_double(double value);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
};
void write_csv(const CsvTable& table, std::ostream& out);

/// Figure datasets; ids 2, 3, 4, 5.
CsvTable figure_table(int id, const analysis::Context& ctx, std::optional<std::size_t> points,
                      unsigned threads);

struct CheckResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

/// The module invariants, one entry per check.
std::vector<CheckResult> run_invariant_suite(const analysis::Context& ctx);

}  // namespace hdecay::cli

#include <gtest/gtest.h>

#include <charconv>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hdecay_cli/cli.hpp"
#include "test_util.hpp"

using namespace hdecay;
using namespace hdecay::cli;

namespace {

struct Outcome {
  int code = -1;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "hdecay");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Outcome o;
  o.code = main_entry(static_cast<int>(argv.size()), argv.data(), out, err);
  o.out = out.str();
  o.err = err.str();
  return o;
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> result;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) result.push_back(line);
  return result;
}

std::vector<double> fields(const std::string& line) {
  std::vector<double> result;
  std::istringstream in(line);
  for (std::string cell; std::getline(in, cell, ',');) result.push_back(std::stod(cell));
  return result;
}

}  // namespace

TEST(Parse, Errors) {
  EXPECT_EQ(invoke({}).code, exit_usage);
  EXPECT_EQ(invoke({"bogus"}).code, exit_usage);
  EXPECT_EQ(invoke({"curve"}).code, exit_usage);
  EXPECT_EQ(invoke({"curve", "--model", "dipole"}).code, exit_usage);
  EXPECT_EQ(invoke({"curve", "--model", "exact", "--points", "abc"}).code, exit_usage);
  EXPECT_EQ(invoke({"figure"}).code, exit_usage);
  EXPECT_EQ(invoke({"figure", "--id", "7"}).code, exit_usage);
  EXPECT_FALSE(invoke({"figure", "--id", "7"}).err.empty());
}

TEST(Parse, Help) {
  const auto o = invoke({"--help"});
  EXPECT_EQ(o.code, exit_ok);
  EXPECT_NE(o.out.find("curve"), std::string::npos);
  EXPECT_EQ(invoke({"curve", "--help"}).code, exit_ok);
}

TEST(Parse, CurveOptions) {
  const char* argv[] = {"hdecay", "curve", "--model", "dipole_cutoff", "--tmin", "1e-19", "--tmax", "1e-15",
                        "--points", "7", "--spacing", "linear", "--cutoff", "1e18", "--threads", "2"};
  const auto r = parse(16, argv);
  ASSERT_TRUE(r.config.has_value()) << r.message;
  const auto& c = *r.config;
  EXPECT_EQ(c.command, Command::curve);
  EXPECT_EQ(c.model, analysis::ModelKind::dipole_cutoff);
  EXPECT_EQ(c.tmin, 1e-19);
  EXPECT_EQ(c.tmax, 1e-15);
  EXPECT_EQ(c.points, 7u);
  EXPECT_EQ(c.spacing, analysis::Spacing::linear);
  EXPECT_EQ(c.cutoff, 1e18);
  EXPECT_EQ(c.threads, 2u);
  EXPECT_NO_THROW(validate(c));
}

TEST(Validate, Inconsistencies) {
  RunConfig c;
  c.command = Command::curve;
  c.model = analysis::ModelKind::exact;
  EXPECT_NO_THROW(validate(c));
  auto bad = c;
  bad.tmin = 1e-12;
  EXPECT_THROW(validate(bad), UsageError);
  bad = c;
  bad.points = 1;
  EXPECT_THROW(validate(bad), UsageError);
  bad = c;
  bad.cutoff = 1e18;
  EXPECT_THROW(validate(bad), UsageError);
  bad = c;
  bad.model = analysis::ModelKind::dipole_cutoff;
  bad.cutoff = -1.0;
  EXPECT_THROW(validate(bad), UsageError);
  bad = c;
  bad.threads = 0;
  EXPECT_THROW(validate(bad), UsageError);
}

TEST(Run, CutoffBelowTransitionIsUsageError) {
  const auto o = invoke({"curve", "--model", "dipole_cutoff", "--cutoff", "1e15"});
  EXPECT_EQ(o.code, exit_usage);
  EXPECT_NE(o.err.find("omega0"), std::string::npos);
}

TEST(Constants, InverseOmegaX) {
  const auto o = invoke({"constants"});
  ASSERT_EQ(o.code, exit_ok);
  const auto ls = lines(o.out);
  ASSERT_FALSE(ls.empty());
  EXPECT_EQ(ls.front(), "key,value");
  bool found = false;
  for (const auto& l : ls) {
    if (l.rfind("inv_omegaX_s,", 0) == 0) {
      found = true;
      EXPECT_LT(testutil::rel_err(std::stod(l.substr(13)), 1.18e-19), 0.005);
    }
  }
  EXPECT_TRUE(found);
}

TEST(Curve, ZenoSecondRow) {
  const auto o = invoke({"curve", "--model", "zeno", "--tmin", "1e-3", "--tmax", "1", "--points", "4",
                         "--time-unit", "omegaX_t"});
  ASSERT_EQ(o.code, exit_ok) << o.err;
  const auto ls = lines(o.out);
  ASSERT_EQ(ls.size(), 5u);
  EXPECT_EQ(ls[0], "omegaX_t,survival,decay");
  const auto row = fields(ls[2]);
  const auto ctx = analysis::hydrogen_context();
  const double x = row[0];
  EXPECT_LT(testutil::rel_err(x, 1e-2), 1e-14);
  EXPECT_LT(testutil::rel_err(row[2], ctx.params.lambda_sq * x * x / 6.0), 1e-14);
  EXPECT_EQ(row[1], 1.0 - row[2]);
}

TEST(Curve, SecondsHeaderAndDeterminism) {
  const std::vector<std::string> args = {"curve", "--model", "exact", "--points", "120"};
  const auto a = invoke(args);
  const auto b = invoke(args);
  auto threaded = args;
  threaded.insert(threaded.end(), {"--threads", "3"});
  const auto c = invoke(threaded);
  ASSERT_EQ(a.code, exit_ok);
  EXPECT_EQ(lines(a.out).front(), "t,survival,decay");
  EXPECT_EQ(lines(a.out).size(), 121u);
  EXPECT_EQ(a.out, b.out);
  EXPECT_EQ(a.out, c.out);
}

TEST(Curve, OutputFile) {
  const auto path = std::filesystem::temp_directory_path() / "hdecay_cli_test_curve.csv";
  std::filesystem::remove(path);
  const auto o = invoke({"curve", "--model", "golden_rule_linear", "--points", "5", "-o", path.string()});
  ASSERT_EQ(o.code, exit_ok) << o.err;
  EXPECT_TRUE(o.out.empty());
  std::ifstream in(path);
  std::stringstream content;
  content << in.rdbuf();
  EXPECT_EQ(content.str(), invoke({"curve", "--model", "golden_rule_linear", "--points", "5"}).out);
  std::filesystem::remove(path);
}

TEST(FormatDouble, RoundTrip) {
  std::mt19937_64 rng(99);
  std::uniform_int_distribution<std::uint64_t> bits;
  int checked = 0;
  while (checked < 2000) {
    const std::uint64_t b = bits(rng);
    double v;
    std::memcpy(&v, &b, sizeof v);
    if (!std::isfinite(v)) continue;
    const std::string s = format_double(v);
    double back = 0.0;
    std::from_chars(s.data(), s.data() + s.size(), back);
    ASSERT_EQ(back, v) << s;
    ++checked;
  }
  EXPECT_EQ(format_double(1.0), "1.0000000000000000e+00");
  EXPECT_EQ(format_double(0.0), "0.0000000000000000e+00");
}

TEST(Figure, Headers) {
  const auto ctx = analysis::hydrogen_context();
  const std::vector<std::pair<int, std::size_t>> expected = {{2, 3}, {3, 4}, {4, 4}, {5, 6}};
  for (const auto& [id, columns] : expected) {
    const auto t = figure_table(id, ctx, 20, 1);
    EXPECT_EQ(t.header.size(), columns) << id;
    ASSERT_EQ(t.rows.size(), 20u) << id;
    for (const auto& row : t.rows) EXPECT_EQ(row.size(), columns) << id;
  }
  EXPECT_EQ(figure_table(2, ctx, 20, 1).header.front(), "omegaX_t");
  EXPECT_EQ(figure_table(4, ctx, 20, 1).header.front(), "t");
  EXPECT_THROW(figure_table(1, ctx, 20, 1), UsageError);
}

TEST(Figure, FourPassesThroughCommandLine) {
  const auto o = invoke({"figure", "--id", "4", "--points", "10"});
  ASSERT_EQ(o.code, exit_ok) << o.err;
  const auto ls = lines(o.out);
  ASSERT_EQ(ls.size(), 11u);
  EXPECT_EQ(ls[0], "t,survival_dipole_regularized,survival_exact,survival_golden_rule_linear");
  const auto last = fields(ls.back());
  EXPECT_EQ(last[0], 1e-13);
  // By 1e-13 s the exact decay sits on the golden-rule line.
  EXPECT_LT(std::abs((1.0 - last[2]) / (1.0 - last[3]) - 1.0), 1e-3);
}

TEST(Verify, AllChecksPass) {
  const auto o = invoke({"verify"});
  EXPECT_EQ(o.code, exit_ok) << o.out;
  const auto ls = lines(o.out);
  EXPECT_GE(ls.size(), 20u);
  for (const auto& l : ls) EXPECT_EQ(l.rfind("PASS ", 0), 0u) << l;
}

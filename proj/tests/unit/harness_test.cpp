#include <gtest/gtest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "dampeuler/acceptance.hpp"
#include "dampeuler/error.hpp"
#include "dampeuler/harness.hpp"
#include "dampeuler/report.hpp"

namespace de = dampeuler;
namespace fs = std::filesystem;

namespace {

de::RunConfig small_config() {
  auto cfg = de::parse_config(R"(
[grid]
x_min = -25
x_max = 25
n = 500
[solver]
t_end = 15
snapshot_stride = 5
)");
  return cfg;
}

fs::path scratch_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("dampeuler_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST(Report, FormatDoubleRoundTrips) {
  EXPECT_EQ(de::format_double(0.0), "0");
  EXPECT_EQ(de::format_double(0.1), "0.1");
  EXPECT_EQ(de::format_double(-2.5e-17), "-2.5e-17");
  EXPECT_EQ(std::stod(de::format_double(1.0 / 3.0)), 1.0 / 3.0);
  EXPECT_EQ(de::format_double(INFINITY), "inf");
}

TEST(Report, RunCsvLayout) {
  std::ostringstream out;
  de::DiagnosticRow row;
  row.t = 1.5;
  row.dt = 0.01;
  de::write_run_csv(out, {row});
  EXPECT_EQ(out.str(),
            "# schema: dampeuler-run v1\n"
            "t,e_inst,ell_inst,E_m,L_m,ratio,max_abs_vx,max_abs_ux,support_radius_v,"
            "support_radius_u,c_max,dt\n"
            "1.5,0,0,0,0,0,0,0,0,0,0,0.01\n");
}

TEST(Report, SvgIsWellFormedPolyline) {
  const std::string svg = de::render_svg("demo", {0, 1, 2}, {{"a", {1, 2, 3}}, {"b", {0, 0, 0}}});
  EXPECT_EQ(svg.rfind("<svg", 0), 0u);
  EXPECT_NE(svg.find("</svg>"), std::string::npos);
  std::size_t count = 0;
  for (std::size_t pos = 0; (pos = svg.find("<polyline", pos)) != std::string::npos; ++pos) ++count;
  EXPECT_EQ(count, 2u);
}

TEST(Harness, ExitCodes) {
  EXPECT_EQ(de::exit_code(de::RunStatus::CompletedGlobal), 0);
  EXPECT_EQ(de::exit_code(de::RunStatus::BlowupDetected), 2);
  EXPECT_EQ(de::exit_code(de::RunStatus::Error), 1);
}

TEST(Harness, BackgroundRunHasZeroEnergy) {
  auto cfg = small_config();
  cfg.initial.epsilon = 0.0;
  const auto rep = de::execute(cfg);
  EXPECT_EQ(rep.status, de::RunStatus::CompletedGlobal);
  for (const auto& row : rep.rows) {
    EXPECT_EQ(row.e_inst, 0.0);
    EXPECT_EQ(row.energy, 0.0);
    EXPECT_EQ(row.dissipation, 0.0);
  }
  EXPECT_GE(rep.fps_margin, cfg.initial.radius);
}

TEST(Harness, CmdRunWritesOutputs) {
  auto cfg = small_config();
  cfg.output.directory = scratch_dir("run");
  std::ostringstream log;
  EXPECT_EQ(de::cmd_run(cfg, log), 0) << log.str();
  EXPECT_TRUE(fs::exists(cfg.output.directory / "run.csv"));
  EXPECT_TRUE(fs::exists(cfg.output.directory / "energy.svg"));
  const auto summary = nlohmann::json::parse(slurp(cfg.output.directory / "summary.json"));
  EXPECT_EQ(summary["status"], "CompletedGlobal");
  EXPECT_EQ(summary["schema_version"], de::kSummarySchemaVersion);
  EXPECT_EQ(summary["blowup"]["time"], nullptr);
  EXPECT_EQ(summary["config"]["grid"]["n"], 500);
  EXPECT_LE(summary["energy"]["ratio_sup"].get<double>(), 100.0);
}

TEST(Harness, CmdRunWithoutOptionalOutputs) {
  auto cfg = small_config();
  cfg.solver.t_end = 1.0;
  cfg.output = {scratch_dir("run_bare"), false, false};
  std::ostringstream log;
  EXPECT_EQ(de::cmd_run(cfg, log), 0);
  EXPECT_FALSE(fs::exists(cfg.output.directory / "run.csv"));
  EXPECT_FALSE(fs::exists(cfg.output.directory / "energy.svg"));
  EXPECT_TRUE(fs::exists(cfg.output.directory / "summary.json"));
}

TEST(Harness, UnwritableOutputIsError) {
  auto cfg = small_config();
  cfg.solver.t_end = 0.5;
  const fs::path blocker = scratch_dir("blocker");
  std::ofstream(blocker) << "file";
  cfg.output.directory = blocker / "sub";
  std::ostringstream log;
  EXPECT_EQ(de::cmd_run(cfg, log), 1);
  EXPECT_NE(log.str().find("error"), std::string::npos);
}

TEST(Harness, EnvironmentOverridesOutputDirectory) {
  auto cfg = small_config();
  setenv(de::kOutputDirEnv, "/tmp/dampeuler_env_dir", 1);
  de::apply_env_overrides(cfg);
  unsetenv(de::kOutputDirEnv);
  EXPECT_EQ(cfg.output.directory, "/tmp/dampeuler_env_dir");
  const auto before = cfg.output.directory;
  de::apply_env_overrides(cfg);
  EXPECT_EQ(cfg.output.directory, before);
}

TEST(Sweep, ParseAxes) {
  const auto axes = de::parse_sweep_axes({"mu=0,1,3", "law=logarithmic,polytropic:2"});
  ASSERT_EQ(axes.size(), 2u);
  EXPECT_EQ(axes[0].values.size(), 3u);
  EXPECT_EQ(axes[1].values[1], "polytropic:2");
  EXPECT_THROW((void)de::parse_sweep_axes({}), de::Error);
  EXPECT_THROW((void)de::parse_sweep_axes({"mu="}), de::Error);
  EXPECT_THROW((void)de::parse_sweep_axes({"cfl=0.1"}), de::Error);
  EXPECT_THROW((void)de::parse_sweep_axes({"mu"}), de::Error);
  EXPECT_THROW((void)de::parse_sweep_axes({"mu=1", "mu=2"}), de::Error);
}

TEST(Sweep, SinglePointMatchesRun) {
  auto cfg = small_config();
  const auto rows = de::run_sweep(cfg, de::parse_sweep_axes({"mu=3"}), {});
  const auto rep = de::execute(cfg);
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0].status, rep.status);
  EXPECT_EQ(rows[0].steps, rep.steps);
  EXPECT_EQ(rows[0].sup_ratio, rep.energy.sup_ratio());
  EXPECT_EQ(rows[0].fps_margin, rep.fps_margin);
  EXPECT_EQ(rows[0].blowup_time, -1.0);
}

TEST(Sweep, DampingLandscapeAndDeterminism) {
  auto cfg = small_config();
  const auto axes = de::parse_sweep_axes({"mu=0,1,3,5"});
  const auto serial = de::run_sweep(cfg, axes, {16, 1});
  const auto parallel = de::run_sweep(cfg, axes, {16, 3});
  ASSERT_EQ(serial.size(), 4u);
  EXPECT_EQ(serial[2].status, de::RunStatus::CompletedGlobal);
  EXPECT_EQ(serial[3].status, de::RunStatus::CompletedGlobal);
  std::ostringstream a;
  std::ostringstream b;
  de::write_sweep_csv(a, serial);
  de::write_sweep_csv(b, parallel);
  EXPECT_EQ(a.str(), b.str());
  EXPECT_EQ(serial[0].mu, 0.0);
  EXPECT_EQ(serial[3].mu, 5.0);
}

TEST(Sweep, CartesianOrderLastAxisFastest) {
  auto cfg = small_config();
  cfg.solver.t_end = 0.5;
  const auto rows = de::run_sweep(cfg, de::parse_sweep_axes({"mu=1,2", "epsilon=0.01,0.02,0.03"}), {});
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[1].mu, 1.0);
  EXPECT_EQ(rows[1].epsilon, 0.02);
  EXPECT_EQ(rows[3].mu, 2.0);
  EXPECT_EQ(rows[3].epsilon, 0.01);
}

TEST(Sweep, PerRunErrorsAreRecorded) {
  auto cfg = small_config();
  cfg.solver.t_end = 0.5;
  const auto rows = de::run_sweep(cfg, de::parse_sweep_axes({"epsilon=0.05,-1", "law=polytropic:2,chaplygin"}), {});
  ASSERT_EQ(rows.size(), 4u);
  EXPECT_EQ(rows[0].status, de::RunStatus::CompletedGlobal);
  EXPECT_EQ(rows[0].law, "polytropic");
  EXPECT_EQ(rows[0].gamma, 2.0);
  EXPECT_EQ(rows[1].law, "chaplygin");
  EXPECT_EQ(rows[2].status, de::RunStatus::Error);
  EXPECT_FALSE(rows[2].error.empty());
}

TEST(Sweep, RespectsCap) {
  auto cfg = small_config();
  EXPECT_THROW((void)de::run_sweep(cfg, de::parse_sweep_axes({"mu=1,2,3"}), {2, 1}), de::Error);
}

TEST(Check, SuiteNames) {
  EXPECT_EQ(de::suite_criteria("all").size(), 8u);
  EXPECT_EQ(de::suite_criteria("transform"), std::vector<int>{1});
  EXPECT_THROW((void)de::suite_criteria("bogus"), de::Error);
}

TEST(Check, FastSuitesPass) {
  for (const char* suite : {"transform", "kernels"}) {
    std::ostringstream out;
    EXPECT_EQ(de::cmd_check(suite, out), 0) << out.str();
    EXPECT_NE(out.str().find("PASS"), std::string::npos);
  }
}

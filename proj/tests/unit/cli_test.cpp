#include <gtest/gtest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "dwell/errors.hpp"
#include "dwell_cli/commands.hpp"
#include "dwell_cli/csv.hpp"

namespace fs = std::filesystem;
using namespace dwell::cli;
using dwell::PotentialSpec;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / "dwell_cli_test" / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int run_tool(const std::string& args) {
  const std::string cmd = std::string(DWELL_TOOL_PATH) + " " + args + " >/dev/null 2>&1";
  const int status = std::system(cmd.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST(Csv, NumbersRoundTrip) {
  for (double v : {0.1, -1e-7, 5.827034097036508, 1.0 / 3.0}) {
    EXPECT_EQ(std::stod(format_number(v)), v);
  }
}

TEST(Csv, ParseTable) {
  std::istringstream in("a,b\n1,x\n2.5,\n");
  const auto t = CsvTable::parse(in);
  EXPECT_EQ(t.rows(), 2u);
  EXPECT_EQ(t.number(1, "a"), 2.5);
  EXPECT_EQ(t.text(0, "b"), "x");
  EXPECT_EQ(t.text(1, "b"), "");
  EXPECT_THROW(t.number(0, "b"), dwell::ValidationError);
  EXPECT_THROW(t.text(0, "c"), dwell::ValidationError);
  std::istringstream ragged("a,b\n1\n");
  EXPECT_THROW(CsvTable::parse(ragged), dwell::ValidationError);
}

TEST(Solver, Names) {
  EXPECT_EQ(parse_solver("both"), Solver::both);
  EXPECT_STREQ(solver_name(parse_solver("spectral")), "spectral");
  EXPECT_THROW(parse_solver("jacobi"), dwell::ValidationError);
}

TEST(CmdSolve, SymmetricGroundEnergyFromBothSolvers) {
  std::ostringstream out, err;
  SolveRequest req{PotentialSpec(500.0, 0.0, 0.0, 0.2)};
  ASSERT_EQ(cmd_solve(req, out, err), kExitOk) << err.str();
  std::istringstream in(out.str());
  const auto t = CsvTable::parse(in);
  ASSERT_EQ(t.rows(), 2u);
  EXPECT_NEAR(t.number(0, "e_spectral"), 5.827034, 1e-5);
  EXPECT_NEAR(t.number(0, "e_analytic"), 5.827034, 1e-5);
  EXPECT_NEAR(t.number(0, "p_left"), t.number(0, "p_right"), 1e-15);
}

TEST(CmdSolve, EmptyBoxSpectralOnly) {
  std::ostringstream out, err;
  SolveRequest req{PotentialSpec(0.0, 0.0, 0.0, 0.2)};
  req.states = 3;
  ASSERT_EQ(cmd_solve(req, out, err), kExitOk);
  std::istringstream in(out.str());
  const auto t = CsvTable::parse(in);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_NEAR(t.number(i, "e_spectral"), double((i + 1) * (i + 1)), 1e-10);
    EXPECT_EQ(t.text(i, "e_analytic"), "");
  }
}

TEST(CmdSolve, FleaProfileIsLocalized) {
  const fs::path dir = scratch("flea");
  std::ostringstream out, err;
  SolveRequest req{PotentialSpec(500.0, 0.0, -1e-5, 0.2)};
  req.profile = dir / "out.csv";
  ASSERT_EQ(cmd_solve(req, out, err), kExitOk);
  std::ifstream in(dir / "out.csv");
  const auto t = CsvTable::parse(in);
  ASSERT_EQ(t.rows(), dwell::kDefaultGridSize);
  // Trapezoid over x >= 0.6 of the density column.
  double right = 0.0;
  for (std::size_t i = 1; i < t.rows(); ++i) {
    const double x0 = t.number(i - 1, "x");
    const double x1 = t.number(i, "x");
    if (x0 < 0.6) continue;
    right += 0.5 * (x1 - x0) * (t.number(i - 1, "density") + t.number(i, "density"));
  }
  EXPECT_GT(right, 0.99);
}

TEST(CmdSolve, CrossCheckFailureExitsTwo) {
  std::ostringstream out, err;
  SolveRequest req{PotentialSpec(500.0, 0.0, 0.0, 0.2)};
  req.basis_size = 10;
  EXPECT_EQ(cmd_solve(req, out, err), kExitCrossCheck);
  EXPECT_NE(err.str().find("cross-check failed"), std::string::npos);
}

TEST(CmdSweep, Fig3LegendLocalizesMonotonically) {
  SweepPlan plan{PotentialSpec(500.0, 0.0, 0.0, 0.2), {0.0, -1e-7, -5e-7, -1e-6, -5e-6, -1e-5}};
  const auto result = run_sweep(plan);
  EXPECT_TRUE(result.all_ok());
  EXPECT_TRUE(result.monotone);
  EXPECT_NEAR(result.rows.front().p_right / (1.0 - result.rows.front().p_barrier), 0.5, 1e-14);
  for (std::size_t i = 0; i < plan.vr_values.size(); ++i) {
    EXPECT_EQ(result.rows[i].vr, plan.vr_values[i]);
  }
}

TEST(CmdSweep, SinglePointIsBalanced) {
  SweepPlan plan{PotentialSpec(500.0, 0.0, 0.0, 0.2), {0.0}};
  const auto row = run_sweep(plan).rows.at(0);
  EXPECT_EQ(row.p_left, row.p_right);
}

TEST(CmdSweep, ParallelMatchesSerial) {
  SweepPlan plan{PotentialSpec(1000.0, 0.0, 0.0, 0.2), {0.0, -1e-9, -3e-8, -1e-10}};
  plan.solver = Solver::analytic;
  plan.workers = 1;
  std::ostringstream serial, parallel;
  write_sweep_csv(serial, run_sweep(plan).rows);
  plan.workers = 3;
  write_sweep_csv(parallel, run_sweep(plan).rows);
  EXPECT_EQ(serial.str(), parallel.str());
}

TEST(CmdSweep, FailedRowIsFlagged) {
  SweepPlan plan{PotentialSpec(500.0, 0.0, 0.0, 0.2), {0.0, 600.0}};
  std::ostringstream out, err;
  EXPECT_EQ(cmd_sweep(plan, std::nullopt, out, err), kExitNumerical);
  std::istringstream in(out.str());
  const auto rows = read_sweep_csv(in);
  EXPECT_EQ(rows[0].status, RowStatus::ok);
  EXPECT_EQ(rows[1].status, RowStatus::failed);
}

TEST(CmdSweep, EmptyPlanRejected) {
  SweepPlan plan{PotentialSpec(500.0, 0.0, 0.0, 0.2), {}};
  EXPECT_THROW(run_sweep(plan), dwell::ValidationError);
}

TEST(CmdFit, SymmetricSweepCannotFit) {
  const fs::path dir = scratch("symfit");
  {
    std::ofstream f(dir / "s.csv");
    f << "vl,vr,energy,p_left,p_right,p_barrier,status\n"
         "0,0,5.8,0.4998,0.4998,0.0004,ok\n";
  }
  std::ostringstream out, err;
  EXPECT_THROW(cmd_fit({dir / "s.csv", std::nullopt}, out, err), dwell::InconsistentDataError);
}

TEST(CmdReproduce, Fig4IsDeterministicAndFitsT) {
  const fs::path a = scratch("fig4a");
  const fs::path b = scratch("fig4b");
  std::ostringstream out, err;
  ASSERT_EQ(cmd_reproduce("fig4", a, out, err), kExitOk) << err.str();
  ASSERT_EQ(cmd_reproduce("fig4", b, out, err), kExitOk);
  for (const char* name : {"sweep.csv", "fit.txt", "overlay.csv", "curve.csv"}) {
    ASSERT_TRUE(fs::exists(a / name)) << name;
    EXPECT_EQ(slurp(a / name), slurp(b / name)) << name;
  }
  const std::string fit = slurp(a / "fit.txt");
  const auto pos = fit.find("t = ");
  ASSERT_NE(pos, std::string::npos);
  EXPECT_NEAR(std::stod(fit.substr(pos + 4)) / 6.84e-7, 1.0, 0.05);
}

TEST(CmdReproduce, Fig3WritesSixDensities) {
  const fs::path dir = scratch("fig3");
  std::ostringstream out, err;
  ASSERT_EQ(cmd_reproduce("fig3", dir, out, err), kExitOk);
  int densities = 0;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().filename().string().rfind("density_vr_", 0) == 0) ++densities;
  }
  EXPECT_EQ(densities, 6);
  EXPECT_TRUE(fs::exists(dir / "density_vr_-1e-05.csv"));
}

TEST(CmdReproduce, UnknownFigure) {
  std::ostringstream out, err;
  EXPECT_THROW(cmd_reproduce("fig2", scratch("bad"), out, err), dwell::ValidationError);
  EXPECT_EQ(figure_ids().size(), 5u);
}

TEST(Presets, FillInKeepsLegend) {
  const auto p = figure_preset("fig6");
  for (double v : p.legend) {
    EXPECT_NE(std::find(p.sweep.begin(), p.sweep.end(), v), p.sweep.end()) << v;
  }
  EXPECT_TRUE(std::is_sorted(p.sweep.rbegin(), p.sweep.rend()));
  EXPECT_GT(p.sweep.size(), p.legend.size());
}

TEST(Executable, ExitCodes) {
  const fs::path dir = scratch("exe");
  EXPECT_EQ(run_tool("solve --v0 500 --b 0.2 --vr 0 --states 2"), 0);
  EXPECT_EQ(run_tool("solve --v0 500 --b 1.5"), 1);
  EXPECT_EQ(run_tool("solve --bogus"), 1);
  EXPECT_EQ(run_tool("reproduce fig2 --dir " + dir.string()), 1);
  EXPECT_EQ(run_tool("solve --v0 500 --n 10"), 2);
  EXPECT_EQ(run_tool("sweep --values 0,-1e-6,-5e-6 --out " + (dir / "s.csv").string()), 0);
  EXPECT_EQ(run_tool("fit " + (dir / "s.csv").string() + " --overlay " +
                     (dir / "o.csv").string()),
            0);
  EXPECT_TRUE(fs::exists(dir / "o.csv"));
  EXPECT_EQ(run_tool("--help"), 0);
}

TEST(Executable, ConfigFileWithOverride) {
  const fs::path dir = scratch("config");
  {
    std::ofstream f(dir / "flea.cfg");
    f << "v0 = 500\nb = 0.2\nvR = -1e-5\n";
  }
  const fs::path out = dir / "e.csv";
  ASSERT_EQ(run_tool("solve --config " + (dir / "flea.cfg").string() + " --vr 0 --solver analytic --out " +
                     out.string()),
            0);
  std::ifstream in(out);
  const auto t = CsvTable::parse(in);
  EXPECT_NEAR(t.number(0, "e_analytic"), 5.827034097, 1e-9);
  EXPECT_EQ(t.text(0, "e_spectral"), "");
}

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>
#include <optional>

#include "dwell/errors.hpp"
#include "dwell/potential.hpp"
#include "dwell_cli/commands.hpp"

namespace {

using dwell::PotentialSpec;
using namespace dwell::cli;

// Config file values are defaults; explicit flags win.
struct SpecFlags {
  double v0 = 500.0;
  double vl = 0.0;
  double vr = 0.0;
  double b = 0.2;
  std::string config;
  CLI::Option* v0_opt = nullptr;
  CLI::Option* vl_opt = nullptr;
  CLI::Option* vr_opt = nullptr;
  CLI::Option* b_opt = nullptr;

  void attach(CLI::App& app) {
    v0_opt = app.add_option("--v0", v0, "barrier height")->capture_default_str();
    vl_opt = app.add_option("--vl", vl, "left well floor")->capture_default_str();
    vr_opt = app.add_option("--vr", vr, "right well floor")->capture_default_str();
    b_opt = app.add_option("--b", b, "barrier width, 0 < b < 1")->capture_default_str();
    app.add_option("--config", config, "key = value file with v0, vL, vR, b")
        ->check(CLI::ExistingFile);
  }

  PotentialSpec resolve() const {
    if (config.empty()) return {v0, vl, vr, b};
    std::ifstream in(config);
    const PotentialSpec base = dwell::parse_potential_config(in);
    return {v0_opt->count() ? v0 : base.v0(), vl_opt->count() ? vl : base.vl(),
            vr_opt->count() ? vr : base.vr(), b_opt->count() ? b : base.b()};
  }
};

const std::map<std::string, Solver> kSolvers{
    {"spectral", Solver::spectral}, {"analytic", Solver::analytic}, {"both", Solver::both}};

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Bound states of an asymmetric double well in an infinite box"};
  app.require_subcommand(1);

  SpecFlags solve_flags;
  SolveRequest solve{PotentialSpec(0.0, 0.0, 0.0, 0.5)};
  std::string solve_out, solve_profile;
  auto* solve_cmd = app.add_subcommand("solve", "energies and occupancies for one potential");
  solve_flags.attach(*solve_cmd);
  solve_cmd->add_option("--solver", solve.solver, "spectral, analytic or both")
      ->transform(CLI::CheckedTransformer(kSolvers, CLI::ignore_case));
  solve_cmd->add_option("--n", solve.basis_size, "basis size")->capture_default_str();
  solve_cmd->add_option("--states", solve.states, "number of states")->capture_default_str();
  solve_cmd->add_option("--grid", solve.grid, "profile grid points")->capture_default_str();
  solve_cmd->add_option("--out", solve_out, "energies CSV (default stdout)");
  solve_cmd->add_option("--profile", solve_profile, "write x,psi,density CSV here");
  solve_cmd->add_option("--state", solve.profile_state, "state index for --profile")
      ->capture_default_str();

  SpecFlags sweep_flags;
  SweepPlan plan{PotentialSpec(0.0, 0.0, 0.0, 0.5), {}};
  std::string sweep_out;
  auto* sweep_cmd = app.add_subcommand("sweep", "track one state over right-floor values");
  sweep_flags.attach(*sweep_cmd);
  sweep_cmd->add_option("--values", plan.vr_values, "right-floor values, in output order")
      ->required()
      ->delimiter(',');
  sweep_cmd->add_option("--solver", plan.solver, "spectral, analytic or both")
      ->transform(CLI::CheckedTransformer(kSolvers, CLI::ignore_case));
  sweep_cmd->add_option("--n", plan.basis_size, "basis size")->capture_default_str();
  sweep_cmd->add_option("--state", plan.state_index, "state index")->capture_default_str();
  sweep_cmd->add_option("--workers", plan.workers, "worker threads, 0 for all cores");
  sweep_cmd->add_option("--out", sweep_out, "sweep CSV (default stdout)");

  FitRequest fit;
  std::string fit_overlay;
  auto* fit_cmd = app.add_subcommand("fit", "fit the two-state model to a sweep CSV");
  fit_cmd->add_option("sweep", fit.sweep_csv, "sweep CSV")->required()->check(CLI::ExistingFile);
  fit_cmd->add_option("--overlay", fit_overlay, "write overlay CSV here");

  std::string figure;
  std::string figure_dir;
  auto* repro_cmd = app.add_subcommand("reproduce", "write CSVs for one figure");
  repro_cmd->add_option("figure", figure, "fig1, fig3, fig4, fig5 or fig6")->required();
  repro_cmd->add_option("--dir", figure_dir, "output directory (default ./<figure>)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*solve_cmd) {
      solve.spec = solve_flags.resolve();
      if (!solve_out.empty()) solve.out = solve_out;
      if (!solve_profile.empty()) solve.profile = solve_profile;
      return cmd_solve(solve, std::cout, std::cerr);
    }
    if (*sweep_cmd) {
      plan.base = sweep_flags.resolve();
      std::optional<std::filesystem::path> out;
      if (!sweep_out.empty()) out = sweep_out;
      return cmd_sweep(plan, out, std::cout, std::cerr);
    }
    if (*fit_cmd) {
      if (!fit_overlay.empty()) fit.overlay = fit_overlay;
      return cmd_fit(fit, std::cout, std::cerr);
    }
    if (*repro_cmd) {
      return cmd_reproduce(figure, figure_dir.empty() ? figure : figure_dir, std::cout,
                           std::cerr);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return exit_code_for(e);
  }
  return kExitUsage;
}

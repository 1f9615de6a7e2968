#pragma once

#include <cstddef>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "dwell/observables.hpp"
#include "dwell/potential.hpp"
#include "dwell/spectral.hpp"
#include "dwell_cli/sweep.hpp"

namespace dwell::cli {

enum ExitCode : int {
  kExitOk = 0,
  kExitUsage = 1,
  kExitCrossCheck = 2,
  kExitNumerical = 3,
};

/// Map an exception escaping a command to its exit code.
int exit_code_for(const std::exception& e) noexcept;

struct SolveRequest {
  PotentialSpec spec;
  Solver solver = Solver::both;
  std::size_t basis_size = kDefaultBasisSize;
  std::size_t states = 2;
  std::size_t grid = kDefaultGridSize;
  std::size_t profile_state = 0;
  std::optional<std::filesystem::path> out;
  std::optional<std::filesystem::path> profile;
};

/// Energies table: state,e_spectral,e_analytic,p_left,p_barrier,p_right.
/// Optional profile: x,psi,density.
int cmd_solve(const SolveRequest& request, std::ostream& out, std::ostream& err);

int cmd_sweep(const SweepPlan& plan, const std::optional<std::filesystem::path>& path,
              std::ostream& out, std::ostream& err);

struct FitRequest {
  std::filesystem::path sweep_csv;
  std::optional<std::filesystem::path> overlay;
};

int cmd_fit(const FitRequest& request, std::ostream& out, std::ostream& err);

struct FigurePreset {
  std::string id;
  PotentialSpec base;
  std::vector<double> legend;    // vr values named in the caption
  std::vector<double> sweep;     // legend plus fill-in, descending
  bool densities = false;
  bool fit = false;
};

/// Throws ValidationError for an unknown id.
FigurePreset figure_preset(const std::string& id);
std::vector<std::string> figure_ids();

int cmd_reproduce(const std::string& id, const std::filesystem::path& dir,
                  std::ostream& out, std::ostream& err);

}  // namespace dwell::cli

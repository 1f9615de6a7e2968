#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <vector>

#include "dwell/potential.hpp"
#include "dwell/spectral.hpp"

namespace dwell::cli {

enum class Solver { spectral, analytic, both };

Solver parse_solver(const std::string& name);
const char* solver_name(Solver solver) noexcept;

/// Ground energies from the two solvers may differ by at most this much.
inline constexpr double kCrossCheckTolerance = 1e-4;

struct SweepPlan {
  PotentialSpec base;
  std::vector<double> vr_values;
  Solver solver = Solver::both;
  std::size_t state_index = 0;
  std::size_t basis_size = kDefaultBasisSize;
  std::size_t workers = 0;  // 0: hardware concurrency
};

enum class RowStatus { ok, cross_check, failed };

struct SweepRow {
  double vl = 0.0;
  double vr = 0.0;
  double energy = 0.0;
  double p_left = 0.0;
  double p_right = 0.0;
  double p_barrier = 0.0;
  RowStatus status = RowStatus::ok;
  std::string message;
};

struct SweepResult {
  std::vector<SweepRow> rows;  // plan order
  bool monotone = true;        // p_right strictly increases as vr decreases
  bool all_ok() const noexcept;
  bool any_cross_check_failure() const noexcept;
};

/// Solve one row. Failures are recorded in the row, never thrown.
SweepRow solve_row(const SweepPlan& plan, double vr);

SweepResult run_sweep(const SweepPlan& plan);

/// Columns: vl,vr,energy,p_left,p_right,p_barrier,status
void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

/// Rows whose status is not "ok" are kept with their status text.
std::vector<SweepRow> read_sweep_csv(std::istream& in);

/// True when p_right strictly increases along rows sorted by decreasing vr.
bool p_right_monotone(const std::vector<SweepRow>& rows);

}  // namespace dwell::cli

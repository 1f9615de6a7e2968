#include "dwell_cli/sweep.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <ostream>
#include <thread>

#include "dwell/analytic.hpp"
#include "dwell/errors.hpp"
#include "dwell/observables.hpp"
#include "dwell_cli/csv.hpp"

namespace dwell::cli {

Solver parse_solver(const std::string& name) {
  if (name == "spectral") return Solver::spectral;
  if (name == "analytic") return Solver::analytic;
  if (name == "both") return Solver::both;
  throw ValidationError("unknown solver '" + name + "'");
}

const char* solver_name(Solver solver) noexcept {
  switch (solver) {
    case Solver::spectral: return "spectral";
    case Solver::analytic: return "analytic";
    case Solver::both: return "both";
  }
  return "?";
}

bool SweepResult::all_ok() const noexcept {
  return std::all_of(rows.begin(), rows.end(),
                     [](const SweepRow& r) { return r.status == RowStatus::ok; });
}

bool SweepResult::any_cross_check_failure() const noexcept {
  return std::any_of(rows.begin(), rows.end(),
                     [](const SweepRow& r) { return r.status == RowStatus::cross_check; });
}

namespace {

// Commas would break the CSV, so messages are flattened.
std::string sanitize(std::string text) {
  std::replace(text.begin(), text.end(), ',', ';');
  std::replace(text.begin(), text.end(), '\n', ' ');
  return text;
}

void fill(SweepRow& row, double energy, const WellOccupancy& occ) {
  row.energy = energy;
  row.p_left = occ.p_left;
  row.p_right = occ.p_right;
  row.p_barrier = occ.p_barrier;
}

}  // namespace

SweepRow solve_row(const SweepPlan& plan, double vr) {
  SweepRow row;
  row.vl = plan.base.vl();
  row.vr = vr;
  try {
    const PotentialSpec spec = plan.base.with_vr(vr);
    const std::size_t k = plan.state_index;
    if (plan.solver == Solver::spectral) {
      const auto sol = solve_spectral(spec, plan.basis_size, true);
      if (k >= sol.size()) throw DomainError("state index beyond basis");
      fill(row, sol.energies[k], occupancy(sol.state(k), spec));
      return row;
    }
    const auto levels = find_levels(spec, k + 1);
    const auto state = assemble_state(spec, levels[k]);
    fill(row, state.energy, occupancy(state));
    if (plan.solver == Solver::both) {
      const auto sol = solve_spectral(spec, plan.basis_size, false);
      const double diff = std::abs(sol.energies.at(0) - levels.front());
      if (diff > kCrossCheckTolerance) {
        row.status = RowStatus::cross_check;
        row.message = sanitize("ground energies differ by " + format_number(diff));
      }
    }
  } catch (const std::exception& e) {
    row.status = RowStatus::failed;
    row.message = sanitize(e.what());
  }
  return row;
}

SweepResult run_sweep(const SweepPlan& plan) {
  if (plan.vr_values.empty()) throw ValidationError("sweep: no vr values");
  SweepResult result;
  result.rows.resize(plan.vr_values.size());

  std::size_t workers = plan.workers;
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = std::min(workers, plan.vr_values.size());

  std::atomic<std::size_t> next{0};
  auto work = [&] {
    for (std::size_t i = next++; i < plan.vr_values.size(); i = next++) {
      result.rows[i] = solve_row(plan, plan.vr_values[i]);
    }
  };
  if (workers <= 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (std::size_t w = 0; w < workers; ++w) pool.emplace_back(work);
  }
  result.monotone = p_right_monotone(result.rows);
  return result;
}

namespace {

std::string status_text(const SweepRow& row) {
  switch (row.status) {
    case RowStatus::ok: return "ok";
    case RowStatus::cross_check: return "cross_check: " + row.message;
    case RowStatus::failed: return "failed: " + row.message;
  }
  return "failed";
}

}  // namespace

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  write_row(out, {"vl", "vr", "energy", "p_left", "p_right", "p_barrier", "status"});
  for (const auto& r : rows) {
    const bool ok = r.status != RowStatus::failed;
    write_row(out, {format_number(r.vl), format_number(r.vr),
                    ok ? format_number(r.energy) : "nan",
                    ok ? format_number(r.p_left) : "nan",
                    ok ? format_number(r.p_right) : "nan",
                    ok ? format_number(r.p_barrier) : "nan", status_text(r)});
  }
}

std::vector<SweepRow> read_sweep_csv(std::istream& in) {
  const auto table = CsvTable::parse(in);
  std::vector<SweepRow> rows;
  rows.reserve(table.rows());
  for (std::size_t i = 0; i < table.rows(); ++i) {
    SweepRow r;
    r.vl = table.number(i, "vl");
    r.vr = table.number(i, "vr");
    const std::string& status = table.has_column("status") ? table.text(i, "status") : "ok";
    if (status == "ok") {
      r.energy = table.has_column("energy") ? table.number(i, "energy") : 0.0;
      r.p_left = table.number(i, "p_left");
      r.p_right = table.number(i, "p_right");
      r.p_barrier = table.has_column("p_barrier") ? table.number(i, "p_barrier") : 0.0;
    } else if (status.rfind("cross_check", 0) == 0) {
      r.status = RowStatus::cross_check;
      r.message = status;
    } else {
      r.status = RowStatus::failed;
      r.message = status;
    }
    rows.push_back(std::move(r));
  }
  return rows;
}

bool p_right_monotone(const std::vector<SweepRow>& rows) {
  std::vector<std::size_t> order(rows.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return rows[a].vr > rows[b].vr; });
  for (std::size_t i = 1; i < order.size(); ++i) {
    const auto& prev = rows[order[i - 1]];
    const auto& cur = rows[order[i]];
    if (prev.status != RowStatus::ok || cur.status != RowStatus::ok) return false;
    if (!(cur.p_right > prev.p_right)) return false;
  }
  return true;
}

}  // namespace dwell::cli

#include "dwell_cli/commands.hpp"

#include <fmt/format.h>
#include <fmt/ostream.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iostream>

#include "dwell/analytic.hpp"
#include "dwell/errors.hpp"
#include "dwell/toymodel.hpp"
#include "dwell_cli/csv.hpp"

namespace dwell::cli {

namespace fs = std::filesystem;

int exit_code_for(const std::exception& e) noexcept {
  if (dynamic_cast<const ValidationError*>(&e) != nullptr) return kExitUsage;
  if (dynamic_cast<const InconsistentDataError*>(&e) != nullptr) return kExitUsage;
  return kExitNumerical;
}

namespace {

std::ofstream open_output(const fs::path& path) {
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream file(path);
  if (!file) throw ValidationError("cannot open '" + path.string() + "' for writing");
  return file;
}

std::ifstream open_input(const fs::path& path) {
  std::ifstream file(path);
  if (!file) throw ValidationError("cannot open '" + path.string() + "'");
  return file;
}

std::string optional_number(std::optional<double> v) {
  return v ? format_number(*v) : std::string{};
}

template <class Wavefunction>
void write_profile(std::ostream& out, std::size_t grid, Wavefunction psi) {
  if (grid < 2) throw ValidationError("profile grid needs at least 2 points");
  write_row(out, {"x", "psi", "density"});
  for (std::size_t i = 0; i < grid; ++i) {
    const double x = static_cast<double>(i) / static_cast<double>(grid - 1);
    const double v = psi(x);
    write_row(out, {format_number(x), format_number(v), format_number(v * v)});
  }
}

// Analytic levels below v0, or none when the regime has no such window.
std::vector<AnalyticState> analytic_states(const PotentialSpec& spec, std::size_t count,
                                           std::ostream& err) {
  std::vector<double> levels;
  try {
    levels = find_levels(spec, count);
  } catch (const PartialResultError& e) {
    levels = e.found();
    err << fmt::format("note: only {} level(s) below v0 for the analytic solver\n",
                       levels.size());
  } catch (const DomainError& e) {
    err << "note: analytic solver unavailable: " << e.what() << '\n';
  }
  std::vector<AnalyticState> states;
  states.reserve(levels.size());
  for (double e : levels) states.push_back(assemble_state(spec, e));
  return states;
}

}  // namespace

int cmd_solve(const SolveRequest& request, std::ostream& out, std::ostream& err) {
  if (request.states == 0) throw ValidationError("--states must be positive");
  const PotentialSpec& spec = request.spec;

  std::optional<SpectralSolution> spectral;
  if (request.solver != Solver::analytic) {
    spectral = solve_spectral(spec, request.basis_size, true);
  }
  std::vector<AnalyticState> analytic;
  if (request.solver != Solver::spectral) {
    analytic = analytic_states(spec, request.states, err);
    if (request.solver == Solver::analytic && analytic.empty()) {
      err << "error: no analytic levels\n";
      return kExitNumerical;
    }
  }

  std::size_t rows = request.states;
  if (spectral) {
    rows = std::min(rows, spectral->size());
  } else {
    rows = std::min(rows, analytic.size());
  }

  std::ofstream file;
  if (request.out) file = open_output(*request.out);
  std::ostream& table = request.out ? file : out;
  write_row(table, {"state", "e_spectral", "e_analytic", "p_left", "p_barrier", "p_right"});
  for (std::size_t i = 0; i < rows; ++i) {
    std::optional<double> es;
    std::optional<double> ea;
    WellOccupancy occ;
    if (spectral) es = spectral->energies[i];
    if (i < analytic.size()) {
      ea = analytic[i].energy;
      occ = occupancy(analytic[i]);
    } else {
      occ = occupancy(spectral->state(i), spec);
    }
    write_row(table, {std::to_string(i), optional_number(es), optional_number(ea),
                      format_number(occ.p_left), format_number(occ.p_barrier),
                      format_number(occ.p_right)});
  }
  table.flush();

  if (request.profile) {
    const std::size_t k = request.profile_state;
    auto file_out = open_output(*request.profile);
    if (k < analytic.size()) {
      const auto& s = analytic[k];
      write_profile(file_out, request.grid, [&](double x) { return s.value(x); });
    } else if (spectral && k < spectral->size()) {
      const auto s = spectral->state(k);
      write_profile(file_out, request.grid, [&](double x) { return wavefunction_at(s, x); });
    } else {
      throw ValidationError("--state is beyond the computed states");
    }
  }

  if (request.solver == Solver::both && spectral && !analytic.empty()) {
    const double diff = std::abs(spectral->energies[0] - analytic[0].energy);
    if (diff > kCrossCheckTolerance) {
      err << fmt::format(
          "cross-check failed: ground energy spectral {:.17g} vs analytic {:.17g} "
          "(difference {:.3g} > {:.0e}); try a larger --n\n",
          spectral->energies[0], analytic[0].energy, diff, kCrossCheckTolerance);
      return kExitCrossCheck;
    }
  }
  return kExitOk;
}

int cmd_sweep(const SweepPlan& plan, const std::optional<fs::path>& path, std::ostream& out,
              std::ostream& err) {
  const SweepResult result = run_sweep(plan);
  if (path) {
    auto file = open_output(*path);
    write_sweep_csv(file, result.rows);
  } else {
    write_sweep_csv(out, result.rows);
  }
  err << "p_right strictly increasing as vr decreases: " << (result.monotone ? "yes" : "no")
      << '\n';
  for (const auto& r : result.rows) {
    if (r.status != RowStatus::ok) {
      err << fmt::format("row vr={:.17g}: {}\n", r.vr, r.message);
    }
  }
  if (result.any_cross_check_failure()) return kExitCrossCheck;
  if (!result.all_ok()) return kExitNumerical;
  return kExitOk;
}

namespace {

struct FitInputs {
  std::vector<SweepPoint> points;
  std::vector<SweepRow> rows;  // aligned with points
};

FitInputs fit_inputs(const std::vector<SweepRow>& rows) {
  FitInputs in;
  for (const auto& r : rows) {
    if (r.status != RowStatus::ok) continue;
    const double total = r.p_left + r.p_right;
    in.points.push_back({(r.vl - r.vr) / 2.0, r.p_left / total});
    in.rows.push_back(r);
  }
  const auto asymmetric = std::count_if(in.points.begin(), in.points.end(),
                                        [](const SweepPoint& p) { return p.delta != 0.0; });
  if (asymmetric < 2) {
    throw InconsistentDataError("cannot fit: sweep needs at least 2 asymmetric rows");
  }
  return in;
}

void write_fit_report(std::ostream& out, const FitInputs& in, const FitResult& fit) {
  out << "t = " << format_number(fit.t) << '\n'
      << "reference_vr = " << format_number(in.rows[fit.reference].vr) << '\n'
      << "reference_delta = " << format_number(in.points[fit.reference].delta) << '\n'
      << "reference_p_left = " << format_number(in.points[fit.reference].p_left) << '\n'
      << "points = " << in.points.size() << '\n'
      << "max_deviation = " << format_number(fit.max_deviation) << '\n';
}

void write_overlay(std::ostream& out, const FitResult& fit) {
  write_row(out, {"delta", "delta_over_t", "p_left_micro", "p_left_toy", "p_right_micro",
                  "p_right_toy"});
  for (const auto& p : fit.overlay) {
    write_row(out, {format_number(p.delta), format_number(p.delta_over_t),
                    format_number(p.p_left_micro), format_number(p.p_left_toy),
                    format_number(1.0 - p.p_left_micro), format_number(1.0 - p.p_left_toy)});
  }
}

void write_curve(std::ostream& out, const FitResult& fit) {
  double span = 1.0;
  for (const auto& p : fit.overlay) span = std::max(span, std::abs(p.delta_over_t));
  span *= 1.1;
  constexpr std::size_t points = 201;
  std::vector<double> ratios(points);
  for (std::size_t i = 0; i < points; ++i) {
    ratios[i] = span * static_cast<double>(i) / static_cast<double>(points - 1);
  }
  const auto curve = occupancy_curve(fit.t, ratios);
  write_row(out, {"delta_over_t", "p_left", "p_right"});
  for (std::size_t i = 0; i < points; ++i) {
    write_row(out, {format_number(curve.ratios[i]), format_number(curve.p_left[i]),
                    format_number(curve.p_right[i])});
  }
}

}  // namespace

int cmd_fit(const FitRequest& request, std::ostream& out, std::ostream& err) {
  auto file = open_input(request.sweep_csv);
  const auto in = fit_inputs(read_sweep_csv(file));
  const FitResult fit = fit_sweep(in.points);
  write_fit_report(out, in, fit);
  if (request.overlay) {
    auto overlay = open_output(*request.overlay);
    write_overlay(overlay, fit);
  }
  if (fit.max_deviation >= 0.01) {
    err << "warning: overlay deviation " << format_number(fit.max_deviation)
        << " exceeds 0.01\n";
  }
  return kExitOk;
}

namespace {

// Legend values plus log-spaced fill-in, merged and sorted by decreasing vr.
std::vector<double> with_fill_in(std::vector<double> legend, double lo_exp, double hi_exp,
                                 int per_decade) {
  const int steps = static_cast<int>(std::lround((hi_exp - lo_exp) * per_decade));
  for (int i = 0; i <= steps; ++i) {
    const double v = -std::pow(10.0, lo_exp + static_cast<double>(i) / per_decade);
    const bool dup = std::any_of(legend.begin(), legend.end(), [&](double u) {
      return std::abs(u - v) <= 1e-9 * std::abs(v);
    });
    if (!dup) legend.push_back(v);
  }
  std::sort(legend.begin(), legend.end(), std::greater<>());
  return legend;
}

const std::vector<double> kLegend500{0.0, -1e-7, -5e-7, -1e-6, -5e-6, -1e-5};
const std::vector<double> kLegend1000{0.0, -1e-10, -5e-10, -1e-9, -3e-9, -1e-8, -3e-8};

}  // namespace

std::vector<std::string> figure_ids() { return {"fig1", "fig3", "fig4", "fig5", "fig6"}; }

FigurePreset figure_preset(const std::string& id) {
  const PotentialSpec v500(500.0, 0.0, 0.0, 0.2);
  const PotentialSpec v1000(1000.0, 0.0, 0.0, 0.2);
  if (id == "fig1") {
    const std::vector<double> vr{0.0, -1e-5};
    return {id, v500, vr, vr, true, false};
  }
  if (id == "fig3") return {id, v500, kLegend500, kLegend500, true, false};
  if (id == "fig4") {
    return {id, v500, kLegend500, with_fill_in(kLegend500, -8.0, -5.0, 4), false, true};
  }
  if (id == "fig5") return {id, v1000, kLegend1000, kLegend1000, true, false};
  if (id == "fig6") {
    return {id, v1000, kLegend1000, with_fill_in(kLegend1000, -11.0, -7.75, 4), false, true};
  }
  throw ValidationError("unknown figure '" + id + "' (expected fig1, fig3, fig4, fig5, fig6)");
}

int cmd_reproduce(const std::string& id, const fs::path& dir, std::ostream& out,
                  std::ostream& err) {
  const FigurePreset preset = figure_preset(id);
  fs::create_directories(dir);

  SweepPlan plan{preset.base, preset.sweep};
  const SweepResult sweep = run_sweep(plan);
  {
    auto file = open_output(dir / "sweep.csv");
    write_sweep_csv(file, sweep.rows);
  }
  out << fmt::format("{}: {} sweep rows -> {}\n", id, sweep.rows.size(),
                     (dir / "sweep.csv").string());
  out << "p_right strictly increasing as vr decreases: " << (sweep.monotone ? "yes" : "no")
      << '\n';
  if (sweep.any_cross_check_failure()) return kExitCrossCheck;
  if (!sweep.all_ok()) {
    for (const auto& r : sweep.rows) {
      if (r.status != RowStatus::ok) err << fmt::format("row vr={:.17g}: {}\n", r.vr, r.message);
    }
    return kExitNumerical;
  }

  if (preset.densities) {
    for (double vr : preset.legend) {
      const PotentialSpec spec = preset.base.with_vr(vr);
      const auto state = assemble_state(spec, find_levels(spec, 1).front());
      const fs::path path = dir / fmt::format("density_vr_{:g}.csv", vr == 0.0 ? 0.0 : vr);
      auto file = open_output(path);
      write_profile(file, kDefaultGridSize, [&](double x) { return state.value(x); });
      out << "wrote " << path.string() << '\n';
    }
  }

  if (preset.fit) {
    const auto in = fit_inputs(sweep.rows);
    const FitResult fit = fit_sweep(in.points);
    {
      auto file = open_output(dir / "fit.txt");
      write_fit_report(file, in, fit);
    }
    {
      auto file = open_output(dir / "overlay.csv");
      write_overlay(file, fit);
    }
    {
      auto file = open_output(dir / "curve.csv");
      write_curve(file, fit);
    }
    write_fit_report(out, in, fit);
  }
  return kExitOk;
}

}  // namespace dwell::cli

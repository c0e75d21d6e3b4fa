#pragma once

#include <optional>
#include <span>
#include <vector>

#include "models.hpp"

namespace aggrekin {

// Per-step monitor values; these are the quantities the run loop checks and
// the CSV diagnostics stream records.
struct StepReport {
    double t = 0.0;
    double mass = 0.0;
    double min_rho = 0.0;
    double max_rho = 0.0;
    double max_abs_velocity = 0.0;
    double osl_max = 0.0;        // max_i (a_{i+1/2} - a_{i-1/2}) / dx
    double tv_cumulative = 0.0;  // total variation of the cumulative masses
    double support_leak = 0.0;   // mass within 5 cells of either boundary
};

StepReport report(const MacroState& state, std::span<const double> faces,
                  const Grid1D& grid);
StepReport report(const MacroState& state, const VelocityLaw& law,
                  const Grid1D& grid, VelocityMode mode);

// First time a single cell concentrates the Dirac-proxy threshold:
// max_i rho_i > K/dx (K defaults to 0.5, half of a unit mass in one cell).
// Requires at least 10 snapshots; nullopt when never reached.
std::optional<double> blowup_indicator(const MacroTrajectory& traj, const Grid1D& grid,
                                       double K = 0.5);

// Wasserstein-1 between densities living on different grids over the same
// domain, via the piecewise-constant cumulative masses on the finer grid.
double w1_cross_grid(std::span<const double> rho_coarse, const Grid1D& grid_coarse,
                     std::span<const double> rho_fine, const Grid1D& grid_fine);

struct RefinementRow {
    int nx = 0;
    double dx = 0.0;
    double error = 0.0;
};

struct RefinementTable {
    std::vector<RefinementRow> rows; // one per non-finest grid
    double fitted_order = 0.0;       // least-squares slope of log err vs log dx
};

// Runs the preset on every grid, measures W1 against the finest grid at the
// final time, and fits the order. Needs >= 3 grids.
RefinementTable refinement_study(const ProblemPreset& pre, std::span<const int> grids,
                                 double horizon, VelocityMode mode);

struct ApRow {
    double eps = 0.0;
    double gap = 0.0; // max over steps and cells of |rho_kinetic - rho_limit|
};

struct ApTable {
    std::vector<ApRow> rows;
    double dt = 0.0; // the eps-independent kinetic step actually used
};

// Two-speed kinetic runs against the relaxation-limit scheme (same grid,
// same dt, artificial viscosity pinned to V_M) for each eps.
ApTable compare_ap(const ProblemPreset& pre, std::span<const double> eps_list,
                   int nx, int n_steps);

} // namespace aggrekin

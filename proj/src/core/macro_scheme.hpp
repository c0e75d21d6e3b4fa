#pragma once

#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "grid.hpp"
#include "potential.hpp"
#include "velocity_law.hpp"

namespace aggrekin {

// How the half-face velocity a_{i+1/2} is built from the potential slopes.
// volpert_literal: difference quotient of A, zero branch on bitwise-equal
// slopes. volpert_smooth: same quotient, a(midpoint) on equal slopes.
// naive: a evaluated at the half-face slope; reproduces the wrong dynamics
// and is gated behind an acknowledgment flag in configs.
enum class VelocityMode { volpert_literal, volpert_smooth, naive };

// c = max |a| over [-M(1+w0), M(1+w0)], by dense sampling (4096 interior
// points plus endpoints) with a 1+1e-9 safety factor.
double sup_velocity_bound(const VelocityLaw& law, double M, double w0);

// dt = 0.95 * (2/(3c)) * dx; falls back to dt_max when c == 0.
double cfl_dt(double c, double dx, double dt_max = 0.01);

double volpert_velocity(double u1, double u2, const VelocityLaw& law,
                        VelocityMode mode = VelocityMode::volpert_literal);
double naive_velocity(double u, const VelocityLaw& law);

// J_{i+1/2} = a_{i+1/2} (rho_i + rho_{i+1}) / 2.
double flux_halfface(double a_half, double rho_l, double rho_r);

// Velocities at faces i+1/2 for i = 0..nx-1. Vol'pert modes pair the
// centered slopes at nodes i and i+1; naive evaluates a at the half slope.
std::vector<double> face_velocities(const PotentialField& field,
                                    const VelocityLaw& law, VelocityMode mode,
                                    const Grid1D& grid);

struct MacroState {
    double t = 0.0;
    std::vector<double> rho;
    PotentialField field;
    double mass = 0.0;
};

// Cell averages of a density profile; boundary nodes are forced to zero.
std::vector<double> density_cell_averages(const real_fn& rho_ini, const Grid1D& grid);

// Adds point masses: each (mass, x) becomes mass/dx at the nearest node.
void add_grid_diracs(std::vector<double>& rho,
                     std::span<const std::pair<double, double>> diracs,
                     const Grid1D& grid);

MacroState macro_init(std::vector<double> rho0, const PointyPotential& pot,
                      const ConvolutionWeights& weights, const Grid1D& grid);

// One update of the collapsed scheme
//   rho_i' = rho_i (1 - l c + l/4 (a_- - a_+))
//          + l/2 (c + a_-/2) rho_{i-1} + l/2 (c - a_+/2) rho_{i+1},
// followed by the potential rebuild. Requires lambda <= 2/(3c); the
// coefficients are then nonnegative, so positivity is exact.
MacroState macro_step(const MacroState& state, const VelocityLaw& law,
                      const PointyPotential& pot, const ConvolutionWeights& weights,
                      const Grid1D& grid, double c, VelocityMode mode);

struct MacroTrajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> rho;
};

// Called after every step with the fresh state and the face velocities the
// update used. Returning false stops the run.
using MacroObserver =
    std::function<bool(const MacroState&, std::span<const double> faces, int step)>;

struct MacroRunResult {
    MacroState final_state;
    MacroTrajectory snapshots;
    double c = 0.0;
    int steps = 0;
};

// Fixed-step time loop to the horizon: c and dt are frozen up front
// (mass conservation keeps c valid), snapshots are taken every
// snapshot_stride steps plus the initial and final states.
MacroRunResult run_macro(const PointyPotential& pot, const VelocityLaw& law,
                         VelocityMode mode, Grid1D grid, std::vector<double> rho0,
                         double horizon, int snapshot_stride = 1,
                         double dt_max = 0.01, const MacroObserver& observer = {});

} // namespace aggrekin

#pragma once

#include <functional>
#include <span>
#include <string>
#include <vector>

#include "grid.hpp"
#include "macro_scheme.hpp"
#include "potential.hpp"

namespace aggrekin {

// BGK equilibrium E(v, x) >= 0 with antiderivative calE(v, x) = \int_0^x E(v, y) dy.
// raw_E exposes the unclamped profile so callers can detect and report
// slopes that fall in a clamped (negative raw E) region.
struct EquilibriumModel {
    std::string name;
    std::function<double(double, double)> E;      // clamped, >= 0
    std::function<double(double, double)> calE;   // nondecreasing in x
    std::function<double(double, double)> raw_E;  // may be negative
    bool may_clamp = false;

    // Two-speed run-and-tumble equilibrium E(v,x) = 1/2 + (2/pi) atan(k v x),
    // clamped at zero where the turning profile turns negative; calE uses the
    // exact piecewise antiderivative.
    static EquilibriumModel two_speed_chemotaxis(double k = 10.0);

    // Smooth continuous-velocity equilibrium E(v,x) = e^{xv} / Z(x) on
    // [-vmax, vmax], exactly normalized; calE is built per velocity node by
    // adaptive quadrature memoized over |x| <= x_range.
    static EquilibriumModel exp_tilt(const VelocityGrid& vgrid, double x_range);
};

struct KineticState {
    double t = 0.0;
    double eps = 1.0;
    int n_v = 0; // velocity nodes per row
    std::vector<double> f; // row-major (nx+1) x n_v
    std::vector<double> rho;
    PotentialField field;

    double& at(int i, int j) { return f[size_t(i) * n_v + j]; }
    double at(int i, int j) const { return f[size_t(i) * n_v + j]; }
};

// Equilibrium E_{ij} at one node: difference quotient of calE between the
// adjacent half-face slopes, with the same equal-slope branch as the macro
// velocity (literal: zero; smooth: E at the midpoint).
double equilibrium_E_discrete(const EquilibriumModel& model, double v_j,
                              double u_left, double u_right,
                              VelocityMode mode = VelocityMode::volpert_literal);

// e_row = E_row / I_delta(E_row); all-zero rows fall back to the constant
// row with unit discrete integral (1/(nv dv), or 1/2 per speed).
std::vector<double> normalize_rows(std::span<const double> E_row,
                                   const VelocityGrid& vgrid);

// Everything derived from one (rho, field) pair: discretized equilibrium,
// its normalization, Pi = e * rho, and the induced velocity a_hat.
struct KineticStage {
    std::vector<double> E;   // (nx+1) x n_v
    std::vector<double> e;   // normalized rows
    std::vector<double> Pi;  // e * rho
    std::vector<double> I_E; // row integrals of E
    std::vector<double> a_hat;
    long clamp_events = 0;
    double clamp_sample_slope = 0.0;
};

KineticStage compute_stage(const KineticState& state, const EquilibriumModel& model,
                           const VelocityGrid& vgrid, const Grid1D& grid,
                           VelocityMode mode);

// Exact relaxation over dt: f <- e^{-dt/eps} f + (1 - e^{-dt/eps}) Pi.
// Leaves the per-cell density invariant up to roundoff.
std::vector<double> relax_step(std::span<const double> f, std::span<const double> Pi,
                               double dt, double eps);

// Lax-Friedrichs free transport with viscosity lambda*V_M/2 and zero ghost
// cells; requires lambda * V_M <= 1.
std::vector<double> transport_step(std::span<const double> f, const Grid1D& grid,
                                   const VelocityGrid& vgrid);

struct KineticMoments {
    std::vector<double> rho;
    std::vector<double> J;
    std::vector<double> q;
};

KineticMoments moments(const KineticState& state, const VelocityGrid& vgrid);

// a_hat_i from the trapezoid form: (A_d(u_r) - A_d(u_l)) / ((u_r - u_l) I_E)
// where A_d(x) = I_delta((v_j calE(v_j, x))_j); zero on the excluded nodes.
std::vector<double> ap_velocity(const EquilibriumModel& model,
                                const PotentialField& field,
                                const VelocityGrid& vgrid, const Grid1D& grid,
                                VelocityMode mode = VelocityMode::volpert_literal);

// One step of the relaxation limit of the kinetic scheme:
// rho_i' = rho_i - l/2 (a_{i+1} rho_{i+1} - a_{i-1} rho_{i-1})
//        + l V_M/2 (rho_{i+1} - 2 rho_i + rho_{i-1}).
std::vector<double> limit_macro_step(std::span<const double> rho,
                                     std::span<const double> a_hat,
                                     const Grid1D& grid, double vmax);

double kinetic_cfl_dt(double vmax, double dx);

KineticState kinetic_init(std::vector<double> f0, double eps,
                          const PointyPotential& pot, const ConvolutionWeights& weights,
                          const Grid1D& grid, const VelocityGrid& vgrid);

// f(x, v) = rho(x) shared equally across velocity nodes (f = rho/(2 vmax)
// on the continuous grid, rho/2 per speed on the two-speed set).
std::vector<double> equidistributed_f(std::span<const double> rho,
                                      const VelocityGrid& vgrid);

KineticState ap_step_lie(const KineticState& state, const EquilibriumModel& model,
                         const PointyPotential& pot, const ConvolutionWeights& weights,
                         const Grid1D& grid, const VelocityGrid& vgrid,
                         VelocityMode mode, KineticStage* stage_out = nullptr);

KineticState ap_step_strang(const KineticState& state, const EquilibriumModel& model,
                            const PointyPotential& pot, const ConvolutionWeights& weights,
                            const Grid1D& grid, const VelocityGrid& vgrid,
                            VelocityMode mode, KineticStage* stage_out = nullptr);

} // namespace aggrekin

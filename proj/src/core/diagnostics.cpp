#include "diagnostics.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace aggrekin {

StepReport report(const MacroState& state, std::span<const double> faces,
                  const Grid1D& grid)
{
    const int nx = grid.nx;
    StepReport r;
    r.t = state.t;
    double mass = 0.0;
    double lo = state.rho[0];
    double hi = state.rho[0];
    for (double v : state.rho) {
        mass += v;
        lo = std::min(lo, v);
        hi = std::max(hi, v);
    }
    r.mass = mass * grid.dx;
    r.min_rho = lo;
    r.max_rho = hi;

    for (double a : faces) r.max_abs_velocity = std::max(r.max_abs_velocity, std::abs(a));
    for (size_t i = 1; i < faces.size(); ++i) {
        r.osl_max = std::max(r.osl_max, (faces[i] - faces[i - 1]) / grid.dx);
    }

    const std::vector<double> M = cumulative_mass(state.rho, grid);
    for (size_t i = 0; i + 1 < M.size(); ++i) r.tv_cumulative += std::abs(M[i + 1] - M[i]);

    const int edge = std::min(5, nx + 1);
    for (int i = 0; i < edge; ++i) r.support_leak += state.rho[i];
    for (int i = std::max(edge, nx + 1 - 5); i <= nx; ++i) r.support_leak += state.rho[i];
    r.support_leak *= grid.dx;
    return r;
}

StepReport report(const MacroState& state, const VelocityLaw& law,
                  const Grid1D& grid, VelocityMode mode)
{
    const std::vector<double> faces = face_velocities(state.field, law, mode, grid);
    return report(state, faces, grid);
}

std::optional<double> blowup_indicator(const MacroTrajectory& traj, const Grid1D& grid,
                                       double K)
{
    if (traj.times.size() < 10) {
        throw contract_error("blowup_indicator: need at least 10 snapshots");
    }
    const double threshold = K / grid.dx;
    for (size_t n = 0; n < traj.times.size(); ++n) {
        const auto& rho = traj.rho[n];
        if (*std::max_element(rho.begin(), rho.end()) > threshold) {
            return traj.times[n];
        }
    }
    return std::nullopt;
}

double w1_cross_grid(std::span<const double> rho_coarse, const Grid1D& grid_coarse,
                     std::span<const double> rho_fine, const Grid1D& grid_fine)
{
    const std::vector<double> Mc = cumulative_mass(rho_coarse, grid_coarse);
    const std::vector<double> Mf = cumulative_mass(rho_fine, grid_fine);
    double sum = 0.0;
    for (int i = 0; i <= grid_fine.nx; ++i) {
        const double x = grid_fine.node(i);
        int j = int(std::floor((x - grid_coarse.x0) / grid_coarse.dx + 1e-12));
        j = std::clamp(j, 0, grid_coarse.nx);
        sum += std::abs(Mf[i] - Mc[j]);
    }
    return grid_fine.dx * sum;
}

RefinementTable refinement_study(const ProblemPreset& pre, std::span<const int> grids,
                                 double horizon, VelocityMode mode)
{
    if (grids.size() < 3) throw config_error("refinement study needs >= 3 grids");
    std::vector<int> nxs(grids.begin(), grids.end());
    std::sort(nxs.begin(), nxs.end());

    std::vector<std::vector<double>> finals;
    std::vector<Grid1D> used;
    for (int nx : nxs) {
        Grid1D grid = Grid1D::over_domain(pre.left, pre.right, nx, 1.0);
        const std::vector<double> rho0 = density_cell_averages(pre.rho_ini(), grid);
        MacroRunResult run = run_macro(pre.pot, pre.law, mode, grid, rho0, horizon,
                                       /*snapshot_stride=*/1 << 30);
        grid.set_dt(1.0); // dt is irrelevant for the W1 comparison below
        finals.push_back(run.final_state.rho);
        used.push_back(grid);
    }

    RefinementTable table;
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    const size_t ref = nxs.size() - 1;
    for (size_t g = 0; g < ref; ++g) {
        RefinementRow row;
        row.nx = nxs[g];
        row.dx = used[g].dx;
        row.error = w1_cross_grid(finals[g], used[g], finals[ref], used[ref]);
        table.rows.push_back(row);
        const double lx = std::log(row.dx);
        const double ly = std::log(std::max(row.error, 1e-300));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = double(table.rows.size());
    const double denom = n * sxx - sx * sx;
    table.fitted_order = denom != 0.0 ? (n * sxy - sx * sy) / denom : 0.0;
    return table;
}

ApTable compare_ap(const ProblemPreset& pre, std::span<const double> eps_list,
                   int nx, int n_steps)
{
    if (!pre.kinetic || !pre.vgrid || !pre.vgrid->two_speed || !pre.equilibrium) {
        throw config_error("compare_ap requires a two-speed kinetic preset");
    }
    const VelocityGrid vgrid = *pre.vgrid;
    const EquilibriumModel& model = *pre.equilibrium;
    Grid1D grid = Grid1D::over_domain(pre.left, pre.right, nx, 1.0);
    grid.set_dt(kinetic_cfl_dt(vgrid.vmax, grid.dx));
    const ConvolutionWeights weights = build_weights(pre.pot, grid);
    const std::vector<double> rho0 = density_cell_averages(pre.rho_ini(), grid);

    // Relaxation-limit trajectory, recomputing a_hat from its own density.
    std::vector<std::vector<double>> limit_traj;
    {
        std::vector<double> rho = rho0;
        for (int s = 0; s < n_steps; ++s) {
            const PotentialField field = make_field(pre.pot, weights, rho, grid);
            const std::vector<double> a_hat =
                ap_velocity(model, field, vgrid, grid, VelocityMode::volpert_literal);
            rho = limit_macro_step(rho, a_hat, grid, vgrid.vmax);
            limit_traj.push_back(rho);
        }
    }

    ApTable table;
    table.dt = grid.dt;
    for (double eps : eps_list) {
        KineticState state = kinetic_init(equidistributed_f(rho0, vgrid), eps, pre.pot,
                                          weights, grid, vgrid);
        double gap = 0.0;
        for (int s = 0; s < n_steps; ++s) {
            state = ap_step_lie(state, model, pre.pot, weights, grid, vgrid,
                                VelocityMode::volpert_literal);
            for (int i = 0; i <= nx; ++i) {
                gap = std::max(gap, std::abs(state.rho[i] - limit_traj[s][i]));
            }
        }
        table.rows.push_back({eps, gap});
    }
    return table;
}

} // namespace aggrekin

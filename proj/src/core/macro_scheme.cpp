#include "macro_scheme.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace aggrekin {

double sup_velocity_bound(const VelocityLaw& law, double M, double w0)
{
    if (M < 0.0 || w0 < 0.0) throw contract_error("sup_velocity_bound: negative M or w0");
    const double r = M * (1.0 + w0);
    const int n = 4096;
    double best = std::max(std::abs(law.a(-r)), std::abs(law.a(r)));
    for (int i = 1; i < n; ++i) {
        const double x = -r + 2.0 * r * i / n;
        best = std::max(best, std::abs(law.a(x)));
    }
    return best * (1.0 + 1e-9);
}

double cfl_dt(double c, double dx, double dt_max)
{
    if (!(dx > 0.0)) throw contract_error("cfl_dt: dx must be > 0");
    if (c <= 0.0) return dt_max;
    return 0.95 * (2.0 / (3.0 * c)) * dx;
}

double volpert_velocity(double u1, double u2, const VelocityLaw& law, VelocityMode mode)
{
    if (u1 == u2) {
        return mode == VelocityMode::volpert_smooth ? law.a(0.5 * (u1 + u2)) : 0.0;
    }
    return (law.A(u2) - law.A(u1)) / (u2 - u1);
}

double naive_velocity(double u, const VelocityLaw& law) { return law.a(u); }

double flux_halfface(double a_half, double rho_l, double rho_r)
{
    return a_half * 0.5 * (rho_l + rho_r);
}

std::vector<double> face_velocities(const PotentialField& field,
                                    const VelocityLaw& law, VelocityMode mode,
                                    const Grid1D& grid)
{
    std::vector<double> a(grid.nx, 0.0);
    if (mode == VelocityMode::naive) {
        for (int i = 0; i < grid.nx; ++i) a[i] = naive_velocity(field.dxh[i], law);
    } else {
        for (int i = 0; i < grid.nx; ++i) {
            a[i] = volpert_velocity(field.dxc[i], field.dxc[i + 1], law, mode);
        }
    }
    return a;
}

std::vector<double> density_cell_averages(const real_fn& rho_ini, const Grid1D& grid)
{
    std::vector<double> rho(grid.n_nodes(), 0.0);
    for (int i = 1; i < grid.nx; ++i) {
        rho[i] = gauss_legendre_5(rho_ini, grid.node(i), grid.node(i + 1)) / grid.dx;
    }
    rho[0] = 0.0;
    rho[grid.nx] = 0.0;
    return rho;
}

void add_grid_diracs(std::vector<double>& rho,
                     std::span<const std::pair<double, double>> diracs,
                     const Grid1D& grid)
{
    for (const auto& [mass, x] : diracs) {
        const int i = int(std::lround((x - grid.x0) / grid.dx));
        if (i <= 0 || i >= grid.nx) throw config_error("dirac outside the domain interior");
        rho[i] += mass / grid.dx;
    }
}

MacroState macro_init(std::vector<double> rho0, const PointyPotential& pot,
                      const ConvolutionWeights& weights, const Grid1D& grid)
{
    if (int(rho0.size()) != grid.n_nodes()) throw contract_error("macro_init: shape mismatch");
    rho0.front() = 0.0;
    rho0.back() = 0.0;
    MacroState s;
    s.t = 0.0;
    s.field = make_field(pot, weights, rho0, grid);
    double mass = 0.0;
    for (double r : rho0) mass += r;
    s.mass = mass * grid.dx;
    s.rho = std::move(rho0);
    return s;
}

MacroState macro_step(const MacroState& state, const VelocityLaw& law,
                      const PointyPotential& pot, const ConvolutionWeights& weights,
                      const Grid1D& grid, double c, VelocityMode mode)
{
    const double l = grid.lambda;
    if (l * c > 2.0 / 3.0 * (1.0 + 1e-12)) {
        throw cfl_error("macro_step: lambda exceeds 2/(3c); shrink dt");
    }
    const std::vector<double> a = face_velocities(state.field, law, mode, grid);
    const int nx = grid.nx;
    const std::vector<double>& rho = state.rho;

    std::vector<double> next(nx + 1, 0.0);
    double amax = 0.0;
    for (int i = 1; i < nx; ++i) {
        const double am = a[i - 1];
        const double ap = a[i];
        next[i] = rho[i] * (1.0 - l * c + 0.25 * l * (am - ap)) +
                  0.5 * l * (c + 0.5 * am) * rho[i - 1] +
                  0.5 * l * (c - 0.5 * ap) * rho[i + 1];
        amax = std::max(amax, std::max(std::abs(am), std::abs(ap)));
    }

    double norm_inf = 0.0;
    double min_next = 0.0;
    for (double r : rho) norm_inf = std::max(norm_inf, std::abs(r));
    for (int i = 1; i < nx; ++i) min_next = std::min(min_next, next[i]);
    if (min_next < -1e-14 * norm_inf) {
        throw invariant_error("macro_step: negative density " + std::to_string(min_next));
    }

    MacroState out;
    out.t = state.t + grid.dt;
    out.field = make_field(pot, weights, next, grid);
    out.mass = state.mass;
    out.rho = std::move(next);
    return out;
}

MacroRunResult run_macro(const PointyPotential& pot, const VelocityLaw& law,
                         VelocityMode mode, Grid1D grid, std::vector<double> rho0,
                         double horizon, int snapshot_stride, double dt_max,
                         const MacroObserver& observer)
{
    const ConvolutionWeights weights = build_weights(pot, grid);
    MacroState state = macro_init(std::move(rho0), pot, weights, grid);

    const double c = sup_velocity_bound(law, state.mass, pot.w0);
    grid.set_dt(cfl_dt(c, grid.dx, dt_max));
    const int n_steps = std::max(1, int(std::ceil(horizon / grid.dt - 1e-12)));

    MacroRunResult result;
    result.c = c;
    result.snapshots.times.push_back(state.t);
    result.snapshots.rho.push_back(state.rho);

    for (int step = 1; step <= n_steps; ++step) {
        state = macro_step(state, law, pot, weights, grid, c, mode);
        if (observer) {
            const std::vector<double> faces = face_velocities(state.field, law, mode, grid);
            if (!observer(state, faces, step)) break;
        }
        if (step % snapshot_stride == 0 || step == n_steps) {
            result.snapshots.times.push_back(state.t);
            result.snapshots.rho.push_back(state.rho);
        }
    }
    result.steps = n_steps;
    result.final_state = std::move(state);
    return result;
}

} // namespace aggrekin

#include "kinetic_scheme.hpp"

#include <cmath>
#include <memory>
#include <numbers>

#include "errors.hpp"
#include "quadrature.hpp"

namespace aggrekin {

namespace {

// \int_0^x (1/2 + (2/pi) atan(s v y)) dy with s = k*v, no clamping.
double tilt_atan_antiderivative(double s, double x)
{
    if (s == 0.0) return 0.5 * x;
    const double sx = s * x;
    return 0.5 * x +
           (2.0 / std::numbers::pi) * (x * std::atan(sx) - 0.5 * std::log1p(sx * sx) / s);
}

} // namespace

EquilibriumModel EquilibriumModel::two_speed_chemotaxis(double k)
{
    EquilibriumModel m;
    m.name = "two_speed_chemotaxis:" + std::to_string(k);
    m.may_clamp = true;
    m.raw_E = [k](double v, double x) {
        return 0.5 + (2.0 / std::numbers::pi) * std::atan(k * v * x);
    };
    m.E = [raw = m.raw_E](double v, double x) { return std::max(0.0, raw(v, x)); };
    m.calE = [k](double v, double x) {
        const double s = k * v;
        if (s == 0.0) return 0.5 * x;
        // raw E(v, .) crosses zero where atan(s y) = -pi/4, i.e. y = -1/s.
        const double xc = -1.0 / s;
        if (s > 0.0) {
            return tilt_atan_antiderivative(s, std::max(x, xc));
        }
        return tilt_atan_antiderivative(s, std::min(x, xc));
    };
    return m;
}

EquilibriumModel EquilibriumModel::exp_tilt(const VelocityGrid& vgrid, double x_range)
{
    if (vgrid.two_speed) throw contract_error("exp_tilt expects a continuous velocity grid");
    const double vm = vgrid.vmax;
    auto E = [vm](double v, double x) {
        const double z = x == 0.0 ? 2.0 * vm : 2.0 * std::sinh(vm * x) / x;
        return std::exp(x * v) / z;
    };

    // One antiderivative table per velocity node, found again by bitwise
    // match (the scheme only ever asks at node values).
    auto tables = std::make_shared<std::vector<std::pair<double, AntiderivativeTable>>>();
    for (int j = 0; j < vgrid.n_nodes(); ++j) {
        const double v = vgrid.node(j);
        tables->emplace_back(
            v, AntiderivativeTable([E, v](double x) { return E(v, x); },
                                   -x_range, x_range, 4096));
    }

    EquilibriumModel m;
    m.name = "exp_tilt";
    m.may_clamp = false;
    m.E = E;
    m.raw_E = E;
    m.calE = [tables, E](double v, double x) -> double {
        for (const auto& [vj, table] : *tables) {
            if (vj == v) return table(x);
        }
        return adaptive_gauss_kronrod([E, v](double y) { return E(v, y); }, 0.0, x,
                                      1e-13, 1e-12);
    };
    return m;
}

double equilibrium_E_discrete(const EquilibriumModel& model, double v_j,
                              double u_left, double u_right, VelocityMode mode)
{
    if (u_left == u_right) {
        return mode == VelocityMode::volpert_smooth
                   ? model.E(v_j, 0.5 * (u_left + u_right))
                   : 0.0;
    }
    return (model.calE(v_j, u_right) - model.calE(v_j, u_left)) / (u_right - u_left);
}

std::vector<double> normalize_rows(std::span<const double> E_row,
                                   const VelocityGrid& vgrid)
{
    const double I = trapezoid(E_row, vgrid);
    std::vector<double> e(E_row.size());
    if (I != 0.0) {
        for (size_t j = 0; j < e.size(); ++j) e[j] = E_row[j] / I;
    } else {
        const double uniform = vgrid.two_speed ? 0.5 : 1.0 / (vgrid.nv * vgrid.dv);
        for (double& x : e) x = uniform;
    }
    return e;
}

KineticStage compute_stage(const KineticState& state, const EquilibriumModel& model,
                           const VelocityGrid& vgrid, const Grid1D& grid,
                           VelocityMode mode)
{
    const int nx = grid.nx;
    const int nvn = vgrid.n_nodes();
    KineticStage st;
    st.E.assign(size_t(nx + 1) * nvn, 0.0);
    st.e.assign(size_t(nx + 1) * nvn, 0.0);
    st.Pi.assign(size_t(nx + 1) * nvn, 0.0);
    st.I_E.assign(nx + 1, 0.0);
    st.a_hat.assign(nx + 1, 0.0);

    std::vector<double> row(nvn), vcalr(nvn), vcall(nvn);
    for (int i = 1; i < nx; ++i) {
        const double ul = state.field.dxh[i - 1];
        const double ur = state.field.dxh[i];
        if (model.may_clamp) {
            for (int j = 0; j < nvn; ++j) {
                const double v = vgrid.node(j);
                if (model.raw_E(v, ul) < 0.0 || model.raw_E(v, ur) < 0.0) {
                    if (st.clamp_events == 0) st.clamp_sample_slope = ur;
                    ++st.clamp_events;
                }
            }
        }
        for (int j = 0; j < nvn; ++j) {
            row[j] = equilibrium_E_discrete(model, vgrid.node(j), ul, ur, mode);
        }
        st.I_E[i] = trapezoid(row, vgrid);
        const std::vector<double> erow = normalize_rows(row, vgrid);
        for (int j = 0; j < nvn; ++j) {
            st.E[size_t(i) * nvn + j] = row[j];
            st.e[size_t(i) * nvn + j] = erow[j];
            st.Pi[size_t(i) * nvn + j] = erow[j] * state.rho[i];
        }
        if (ul != ur && st.I_E[i] != 0.0) {
            for (int j = 0; j < nvn; ++j) {
                const double v = vgrid.node(j);
                vcalr[j] = v * model.calE(v, ur);
                vcall[j] = v * model.calE(v, ul);
            }
            const double Ad = trapezoid(vcalr, vgrid) - trapezoid(vcall, vgrid);
            st.a_hat[i] = Ad / ((ur - ul) * st.I_E[i]);
        }
    }
    return st;
}

std::vector<double> relax_step(std::span<const double> f, std::span<const double> Pi,
                               double dt, double eps)
{
    if (f.size() != Pi.size()) throw contract_error("relax_step: shape mismatch");
    if (!(eps > 0.0)) throw contract_error("relax_step: eps must be > 0");
    const double decay = std::exp(-dt / eps);
    std::vector<double> out(f.size());
    for (size_t n = 0; n < f.size(); ++n) {
        out[n] = decay * f[n] + (1.0 - decay) * Pi[n];
    }
    return out;
}

std::vector<double> transport_step(std::span<const double> f, const Grid1D& grid,
                                   const VelocityGrid& vgrid)
{
    const int nx = grid.nx;
    const int nvn = vgrid.n_nodes();
    if (int(f.size()) != (nx + 1) * nvn) throw contract_error("transport_step: shape mismatch");
    const double l = grid.lambda;
    const double vm = vgrid.vmax;
    if (l * vm > 1.0 + 1e-12) {
        throw cfl_error("transport_step: lambda * V_M exceeds 1; shrink dt");
    }
    std::vector<double> out(f.size(), 0.0);
    for (int i = 1; i < nx; ++i) {
        for (int j = 0; j < nvn; ++j) {
            const double v = vgrid.node(j);
            const double fm = f[size_t(i - 1) * nvn + j];
            const double f0 = f[size_t(i) * nvn + j];
            const double fp = f[size_t(i + 1) * nvn + j];
            out[size_t(i) * nvn + j] = f0 - 0.5 * l * v * (fp - fm) +
                                       0.5 * l * vm * (fp - 2.0 * f0 + fm);
        }
    }
    return out;
}

KineticMoments moments(const KineticState& state, const VelocityGrid& vgrid)
{
    const int nvn = vgrid.n_nodes();
    const int n_rows = int(state.f.size()) / nvn;
    KineticMoments m;
    m.rho.assign(n_rows, 0.0);
    m.J.assign(n_rows, 0.0);
    m.q.assign(n_rows, 0.0);
    std::vector<double> r0(nvn), r1(nvn), r2(nvn);
    for (int i = 0; i < n_rows; ++i) {
        for (int j = 0; j < nvn; ++j) {
            const double v = vgrid.node(j);
            const double fij = state.f[size_t(i) * nvn + j];
            r0[j] = fij;
            r1[j] = v * fij;
            r2[j] = v * v * fij;
        }
        m.rho[i] = trapezoid(r0, vgrid);
        m.J[i] = trapezoid(r1, vgrid);
        m.q[i] = trapezoid(r2, vgrid);
    }
    return m;
}

std::vector<double> ap_velocity(const EquilibriumModel& model,
                                const PotentialField& field,
                                const VelocityGrid& vgrid, const Grid1D& grid,
                                VelocityMode mode)
{
    const int nx = grid.nx;
    const int nvn = vgrid.n_nodes();
    std::vector<double> a_hat(nx + 1, 0.0);
    std::vector<double> row(nvn), vr(nvn), vl(nvn);
    for (int i = 1; i < nx; ++i) {
        const double ul = field.dxh[i - 1];
        const double ur = field.dxh[i];
        if (ul == ur) continue;
        for (int j = 0; j < nvn; ++j) {
            const double v = vgrid.node(j);
            row[j] = equilibrium_E_discrete(model, v, ul, ur, mode);
            vr[j] = v * model.calE(v, ur);
            vl[j] = v * model.calE(v, ul);
        }
        const double I_E = trapezoid(row, vgrid);
        if (I_E == 0.0) continue;
        a_hat[i] = (trapezoid(vr, vgrid) - trapezoid(vl, vgrid)) / ((ur - ul) * I_E);
    }
    return a_hat;
}

std::vector<double> limit_macro_step(std::span<const double> rho,
                                     std::span<const double> a_hat,
                                     const Grid1D& grid, double vmax)
{
    const int nx = grid.nx;
    if (int(rho.size()) != nx + 1 || a_hat.size() != rho.size()) {
        throw contract_error("limit_macro_step: shape mismatch");
    }
    const double l = grid.lambda;
    std::vector<double> out(nx + 1, 0.0);
    for (int i = 1; i < nx; ++i) {
        out[i] = rho[i] - 0.5 * l * (a_hat[i + 1] * rho[i + 1] - a_hat[i - 1] * rho[i - 1]) +
                 0.5 * l * vmax * (rho[i + 1] - 2.0 * rho[i] + rho[i - 1]);
    }
    return out;
}

double kinetic_cfl_dt(double vmax, double dx)
{
    if (!(vmax > 0.0) || !(dx > 0.0)) throw contract_error("kinetic_cfl_dt: bad inputs");
    return 0.95 * dx / vmax;
}

std::vector<double> equidistributed_f(std::span<const double> rho,
                                      const VelocityGrid& vgrid)
{
    const int nvn = vgrid.n_nodes();
    // Chosen so the discrete integral of each row reproduces rho exactly:
    // the two-speed sum splits in halves, the trapezoid of a constant row
    // integrates to rho as well.
    const double share = vgrid.two_speed ? 0.5 : 1.0 / (vgrid.nv * vgrid.dv);
    std::vector<double> f(rho.size() * nvn);
    for (size_t i = 0; i < rho.size(); ++i) {
        for (int j = 0; j < nvn; ++j) f[i * nvn + j] = share * rho[i];
    }
    return f;
}

KineticState kinetic_init(std::vector<double> f0, double eps,
                          const PointyPotential& pot, const ConvolutionWeights& weights,
                          const Grid1D& grid, const VelocityGrid& vgrid)
{
    const int nvn = vgrid.n_nodes();
    if (int(f0.size()) != grid.n_nodes() * nvn) throw contract_error("kinetic_init: shape mismatch");
    if (!(eps > 0.0)) throw config_error("kinetic_init: eps must be > 0");
    for (int j = 0; j < nvn; ++j) {
        f0[j] = 0.0;
        f0[size_t(grid.nx) * nvn + j] = 0.0;
    }
    KineticState s;
    s.t = 0.0;
    s.eps = eps;
    s.n_v = nvn;
    s.f = std::move(f0);
    const KineticMoments m = moments(s, vgrid);
    s.rho = m.rho;
    s.field = make_field(pot, weights, s.rho, grid);
    return s;
}

KineticState ap_step_lie(const KineticState& state, const EquilibriumModel& model,
                         const PointyPotential& pot, const ConvolutionWeights& weights,
                         const Grid1D& grid, const VelocityGrid& vgrid,
                         VelocityMode mode, KineticStage* stage_out)
{
    KineticStage stage = compute_stage(state, model, vgrid, grid, mode);
    KineticState out;
    out.t = state.t + grid.dt;
    out.eps = state.eps;
    out.n_v = state.n_v;
    out.f = transport_step(relax_step(state.f, stage.Pi, grid.dt, state.eps), grid, vgrid);
    out.rho = moments(out, vgrid).rho;
    out.field = make_field(pot, weights, out.rho, grid);
    if (stage_out) *stage_out = std::move(stage);
    return out;
}

KineticState ap_step_strang(const KineticState& state, const EquilibriumModel& model,
                            const PointyPotential& pot, const ConvolutionWeights& weights,
                            const Grid1D& grid, const VelocityGrid& vgrid,
                            VelocityMode mode, KineticStage* stage_out)
{
    KineticStage stage = compute_stage(state, model, vgrid, grid, mode);
    KineticState mid;
    mid.t = state.t;
    mid.eps = state.eps;
    mid.n_v = state.n_v;
    mid.f = transport_step(relax_step(state.f, stage.Pi, 0.5 * grid.dt, state.eps),
                           grid, vgrid);
    // Transport changed rho, so the field and Pi must be rebuilt; the final
    // half relaxation leaves rho (hence the field) untouched.
    mid.rho = moments(mid, vgrid).rho;
    mid.field = make_field(pot, weights, mid.rho, grid);
    KineticStage stage2 = compute_stage(mid, model, vgrid, grid, mode);

    KineticState out;
    out.t = state.t + grid.dt;
    out.eps = state.eps;
    out.n_v = state.n_v;
    out.f = relax_step(mid.f, stage2.Pi, 0.5 * grid.dt, state.eps);
    out.rho = moments(out, vgrid).rho;
    out.field = std::move(mid.field);
    if (stage_out) *stage_out = std::move(stage);
    return out;
}

} // namespace aggrekin

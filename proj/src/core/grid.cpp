#include "grid.hpp"

#include <cmath>
#include <string>

#include "errors.hpp"

namespace aggrekin {

Grid1D::Grid1D(double x0_, double dx_, int nx_, double dt_)
    : x0(x0_), dx(dx_), nx(nx_), dt(dt_), lambda(dt_ / dx_)
{
    if (!(dx > 0.0)) throw contract_error("Grid1D: dx must be > 0");
    if (!(dt > 0.0)) throw contract_error("Grid1D: dt must be > 0");
    if (nx < 3) throw contract_error("Grid1D: nx must be >= 3");
}

Grid1D Grid1D::over_domain(double left, double right, int nx, double dt)
{
    if (!(right > left)) throw contract_error("Grid1D: empty domain");
    return Grid1D(left, (right - left) / nx, nx, dt);
}

void Grid1D::set_dt(double new_dt)
{
    if (!(new_dt > 0.0)) throw contract_error("Grid1D: dt must be > 0");
    dt = new_dt;
    lambda = dt / dx;
}

VelocityGrid VelocityGrid::continuous(double vmax, int nv)
{
    if (!(vmax > 0.0)) throw contract_error("VelocityGrid: vmax must be > 0");
    if (nv < 1) throw contract_error("VelocityGrid: nv must be >= 1");
    VelocityGrid g;
    g.two_speed = false;
    g.vmax = vmax;
    g.nv = nv;
    g.dv = 2.0 * vmax / nv;
    return g;
}

VelocityGrid VelocityGrid::make_two_speed(double v)
{
    if (!(v > 0.0)) throw contract_error("VelocityGrid: speed must be > 0");
    VelocityGrid g;
    g.two_speed = true;
    g.vmax = v;
    return g;
}

double trapezoid(std::span<const double> values, const VelocityGrid& vgrid)
{
    if (int(values.size()) != vgrid.n_nodes()) {
        throw contract_error("trapezoid: expected " + std::to_string(vgrid.n_nodes()) +
                             " values, got " + std::to_string(values.size()));
    }
    if (vgrid.two_speed) {
        return values[0] + values[1];
    }
    double interior = 0.0;
    for (int j = 1; j < vgrid.nv; ++j) interior += values[j];
    return 0.5 * vgrid.dv * (values.front() + values.back()) + vgrid.dv * interior;
}

std::vector<double> cumulative_mass(std::span<const double> rho, const Grid1D& grid)
{
    std::vector<double> m(rho.size());
    double acc = 0.0;
    for (size_t i = 0; i < rho.size(); ++i) {
        acc += grid.dx * rho[i];
        m[i] = acc;
    }
    return m;
}

double wasserstein1(std::span<const double> rho1, std::span<const double> rho2,
                    const Grid1D& grid)
{
    if (rho1.size() != rho2.size()) {
        throw contract_error("wasserstein1: length mismatch");
    }
    const std::vector<double> m1 = cumulative_mass(rho1, grid);
    const std::vector<double> m2 = cumulative_mass(rho2, grid);
    const double mass = std::max(std::abs(m1.back()), std::abs(m2.back()));
    if (std::abs(m1.back() - m2.back()) > 1e-10 * std::max(mass, 1e-300)) {
        throw contract_error("wasserstein1: inputs carry different masses");
    }
    double sum = 0.0;
    for (size_t i = 0; i < m1.size(); ++i) sum += std::abs(m1[i] - m2[i]);
    return grid.dx * sum;
}

} // namespace aggrekin

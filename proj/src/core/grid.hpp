#pragma once

#include <span>
#include <vector>

namespace aggrekin {

// Uniform space/time grid. Node values live at x_i = x0 + i*dx for
// i = 0..nx; the boundary nodes 0 and nx carry forced zeros.
struct Grid1D {
    double x0 = 0.0;
    double dx = 0.0;
    int nx = 0;          // index range 0..nx, so nx+1 nodes
    double dt = 0.0;
    double lambda = 0.0; // dt/dx, cached

    Grid1D() = default;
    Grid1D(double x0, double dx, int nx, double dt);

    static Grid1D over_domain(double left, double right, int nx, double dt);

    double node(int i) const { return x0 + i * dx; }
    int n_nodes() const { return nx + 1; }
    double right() const { return x0 + nx * dx; }
    void set_dt(double new_dt);
};

// Velocity space: either a uniform grid on [-vmax, vmax] with nv intervals
// (node j at -vmax + j*dv, j = 0..nv), or the discrete two-speed set {-v, +v}.
struct VelocityGrid {
    bool two_speed = false;
    double vmax = 0.0; // V_M; for two-speed this is the single speed v
    int nv = 0;        // number of intervals (continuous variant)
    double dv = 0.0;   // 2*vmax/nv (continuous variant)

    static VelocityGrid continuous(double vmax, int nv);
    static VelocityGrid make_two_speed(double v);

    int n_nodes() const { return two_speed ? 2 : nv + 1; }
    double node(int j) const { return two_speed ? (j == 0 ? -vmax : vmax) : -vmax + j * dv; }
};

// Trapezoidal quadrature I_delta over the velocity grid:
// (dv/2)(F_0 + F_nv) + dv * sum_{j=1}^{nv-1} F_j.
// The two-speed variant has no quadrature weights; the "integral" is the
// plain two-term sum F(-v) + F(+v).
double trapezoid(std::span<const double> values, const VelocityGrid& vgrid);

// M_i = dx * sum_{k<=i} rho_k.
std::vector<double> cumulative_mass(std::span<const double> rho, const Grid1D& grid);

// L1 distance of cumulative masses: dx * sum_i |M1_i - M2_i|.
// Requires equal masses up to 1e-10 * M.
double wasserstein1(std::span<const double> rho1, std::span<const double> rho2,
                    const Grid1D& grid);

} // namespace aggrekin

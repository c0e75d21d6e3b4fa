#include "potential.hpp"

#include <cassert>
#include <cmath>

#include "errors.hpp"

namespace aggrekin {

namespace {

constexpr double kWeightFloor = 1e-16;

// Antiderivative of e^{-|z|}/2 vanishing at 0.
double exp_half_antiderivative(double z)
{
    const double mag = 0.5 * (1.0 - std::exp(-std::abs(z)));
    return z < 0.0 ? -mag : mag;
}

// Tridiagonal solve of the pinned system. `screened` adds the +S_i term.
std::vector<double> pinned_solve(std::span<const double> rhs_density,
                                 std::span<const double> nu_or_empty,
                                 const Grid1D& grid, bool screened)
{
    const int nx = grid.nx;
    const double dx2 = grid.dx * grid.dx;
    std::vector<double> S(nx + 1, 0.0);
    const int n = nx - 2; // unknowns S_2..S_{nx-1}
    if (n <= 0) return S;

    // Scaled by dx^2: (2 + screened*dx^2) S_i - S_{i-1} - S_{i+1} = dx^2 b_i.
    const double diag = 2.0 + (screened ? dx2 : 0.0);
    std::vector<double> c(n), d(n);
    auto rhs_at = [&](int i) {
        const double b = screened ? rhs_density[i]
                                  : rhs_density[i] - nu_or_empty[i];
        return dx2 * b;
    };

    // Thomas forward sweep; the matrix is strictly diagonally dominant for
    // screened and weakly dominant (irreducible) otherwise, so no pivoting.
    c[0] = -1.0 / diag;
    d[0] = rhs_at(2) / diag;
    for (int row = 1; row < n; ++row) {
        const double denom = diag + c[row - 1];
        c[row] = -1.0 / denom;
        d[row] = (rhs_at(row + 2) + d[row - 1]) / denom;
    }
    assert(std::isfinite(d[n - 1]));
    S[n + 1] = d[n - 1];
    for (int row = n - 2; row >= 0; --row) {
        S[row + 2] = d[row] - c[row] * S[row + 3];
    }
    return S;
}

} // namespace

PointyPotential PointyPotential::zero()
{
    PointyPotential p;
    p.kind = WKind::zero;
    p.w0 = 0.0;
    p.name = "zero";
    return p;
}

PointyPotential PointyPotential::exp_half(bool self_nu)
{
    PointyPotential p;
    p.kind = WKind::exp_half;
    p.w0 = 1.0; // \int e^{-|z|}/2 dz
    p.self_nu = self_nu;
    p.name = self_nu ? "exp_half_self" : "exp_half_weights";
    return p;
}

PointyPotential PointyPotential::custom(std::string name, real_fn w, double w0)
{
    if (!(w0 >= 0.0)) throw contract_error("PointyPotential: w0 must be >= 0");
    PointyPotential p;
    p.kind = WKind::custom;
    p.w0 = w0;
    p.name = std::move(name);
    p.w = std::move(w);
    return p;
}

ConvolutionWeights::ConvolutionWeights(std::vector<double> by_offset, int nx)
    : by_offset_(std::move(by_offset)), nx_(nx)
{
    if (int(by_offset_.size()) != 2 * nx_ + 1) {
        throw contract_error("ConvolutionWeights: bad profile length");
    }
    band_lo_ = 0;
    band_hi_ = -1;
    for (int d = -nx_; d <= nx_; ++d) {
        if (by_offset_[d + nx_] != 0.0) {
            if (band_hi_ < band_lo_) band_lo_ = d;
            band_hi_ = d;
        }
    }
    if (band_hi_ < band_lo_) { // all-zero profile
        band_lo_ = 0;
        band_hi_ = -1;
    }
}

double ConvolutionWeights::weight(int k, int i) const
{
    const int d = i - k;
    if (d < -nx_ || d > nx_) return 0.0;
    return by_offset_[d + nx_];
}

std::vector<double> ConvolutionWeights::apply(std::span<const double> rho) const
{
    const int n = int(rho.size());
    std::vector<double> nu(n, 0.0);
    if (band_hi_ < band_lo_) return nu;
    for (int i = 0; i < n; ++i) {
        double acc = 0.0;
        const int k_lo = std::max(0, i - band_hi_);
        const int k_hi = std::min(n - 1, i - band_lo_);
        for (int k = k_lo; k <= k_hi; ++k) {
            acc += rho[k] * by_offset_[(i - k) + nx_];
        }
        nu[i] = acc;
    }
    return nu;
}

ConvolutionWeights build_weights(const PointyPotential& pot, const Grid1D& grid)
{
    const int nx = grid.nx;
    std::vector<double> profile(2 * nx + 1, 0.0);
    if (pot.kind == WKind::zero) {
        return ConvolutionWeights(std::move(profile), nx);
    }
    for (int d = -nx; d <= nx; ++d) {
        const double lo = (d - 1) * grid.dx;
        const double hi = d * grid.dx;
        double v;
        if (pot.kind == WKind::exp_half) {
            v = exp_half_antiderivative(hi) - exp_half_antiderivative(lo);
        } else {
            v = gauss_legendre_5(pot.w, lo, hi);
        }
        profile[d + nx] = std::abs(v) < kWeightFloor ? 0.0 : v;
    }
    return ConvolutionWeights(std::move(profile), nx);
}

std::vector<double> convolve_nu(const ConvolutionWeights& weights,
                                std::span<const double> rho)
{
    return weights.apply(rho);
}

std::vector<double> solve_potential(std::span<const double> rho,
                                    std::span<const double> nu, const Grid1D& grid)
{
    if (int(rho.size()) != grid.n_nodes() || nu.size() != rho.size()) {
        throw contract_error("solve_potential: shape mismatch");
    }
    return pinned_solve(rho, nu, grid, /*screened=*/false);
}

std::vector<double> solve_potential_self(const PointyPotential& pot,
                                         std::span<const double> rho,
                                         const Grid1D& grid)
{
    if (pot.kind != WKind::exp_half) {
        throw config_error("solve_potential_self requires the exp_half potential");
    }
    if (int(rho.size()) != grid.n_nodes()) {
        throw contract_error("solve_potential_self: shape mismatch");
    }
    return pinned_solve(rho, {}, grid, /*screened=*/true);
}

std::vector<double> solve_potential_anchored(std::span<const double> rho,
                                             std::span<const double> nu,
                                             const Grid1D& grid)
{
    if (int(rho.size()) != grid.n_nodes() || nu.size() != rho.size()) {
        throw contract_error("solve_potential_anchored: shape mismatch");
    }
    const int nx = grid.nx;
    const double dx2 = grid.dx * grid.dx;
    std::vector<double> S(nx + 1, 0.0);
    for (int i = 1; i < nx; ++i) {
        S[i + 1] = 2.0 * S[i] - S[i - 1] + dx2 * (nu[i] - rho[i]);
    }
    return S;
}

std::vector<double> dx_centered(std::span<const double> S, const Grid1D& grid)
{
    const int nx = grid.nx;
    if (int(S.size()) != nx + 1) throw contract_error("dx_centered: shape mismatch");
    std::vector<double> out(nx + 1, 0.0);
    const double inv2dx = 0.5 / grid.dx;
    for (int m = 1; m < nx; ++m) out[m] = (S[m + 1] - S[m - 1]) * inv2dx;
    out[nx] = (S[nx] - S[nx - 1]) / grid.dx;
    return out;
}

std::vector<double> dx_half(std::span<const double> S, const Grid1D& grid)
{
    const int nx = grid.nx;
    if (int(S.size()) != nx + 1) throw contract_error("dx_half: shape mismatch");
    std::vector<double> out(nx, 0.0);
    for (int i = 0; i < nx; ++i) out[i] = (S[i + 1] - S[i]) / grid.dx;
    return out;
}

PotentialField make_field(const PointyPotential& pot, const ConvolutionWeights& weights,
                          std::span<const double> rho, const Grid1D& grid)
{
    PotentialField field;
    if (pot.kind == WKind::zero) {
        field.nu.assign(rho.size(), 0.0);
        field.S = solve_potential_anchored(rho, field.nu, grid);
    } else if (pot.kind == WKind::exp_half && pot.self_nu) {
        field.S = solve_potential_self(pot, rho, grid);
        field.nu = field.S;
    } else {
        field.nu = convolve_nu(weights, rho);
        field.S = solve_potential(rho, field.nu, grid);
    }
    field.dxc = dx_centered(field.S, grid);
    field.dxh = dx_half(field.S, grid);
    return field;
}

} // namespace aggrekin

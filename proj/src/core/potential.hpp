#pragma once

#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "grid.hpp"
#include "quadrature.hpp"

namespace aggrekin {

enum class WKind { zero, exp_half, custom };

// Interaction potential W with a unit Lipschitz kink at the origin:
// the regular part w (bounded, integrable) is all that enters the solver.
// exp_half is w(z) = e^{-|z|}/2, the case w = W; self_nu selects the
// shortcut nu_i = S_i for that case.
struct PointyPotential {
    WKind kind = WKind::zero;
    double w0 = 0.0; // L1 norm of w
    bool self_nu = false;
    std::string name = "zero";
    real_fn w; // set for kind == custom

    static PointyPotential zero();
    static PointyPotential exp_half(bool self_nu = true);
    static PointyPotential custom(std::string name, real_fn w, double w0);
};

// Per-offset cell integrals of w: weight(k, i) = \int over
// [(i-1-k)dx, (i-k)dx] of w(z) dz. The matrix is Toeplitz, so only the
// diagonal profile is stored; entries below 1e-16 are exact zeros.
class ConvolutionWeights {
public:
    ConvolutionWeights() = default;
    ConvolutionWeights(std::vector<double> by_offset, int nx);

    double weight(int k, int i) const;
    int band_lo() const { return band_lo_; } // smallest offset i-k with nonzero weight
    int band_hi() const { return band_hi_; }

    std::vector<double> apply(std::span<const double> rho) const;

private:
    std::vector<double> by_offset_; // offset d = i-k at index d + nx
    int nx_ = 0;
    int band_lo_ = 0;
    int band_hi_ = -1;
};

ConvolutionWeights build_weights(const PointyPotential& pot, const Grid1D& grid);

// nu_i = sum_k rho_k * weight(k, i).
std::vector<double> convolve_nu(const ConvolutionWeights& weights,
                                std::span<const double> rho);

// Discrete screened/plain Poisson solves for the potential S on nodes 0..nx.
// All impose the compact-support closure S_0 = S_1 = 0.
//
// solve_potential: -(S_{i+1}-2S_i+S_{i-1})/dx^2 + nu_i = rho_i at the
// interior nodes 2..nx-1 with S_nx = 0, by tridiagonal elimination.
std::vector<double> solve_potential(std::span<const double> rho,
                                    std::span<const double> nu, const Grid1D& grid);

// solve_potential_self: the w = W case, -(S_{i+1}-2S_i+S_{i-1})/dx^2 + S_i = rho_i,
// same closure; returns S and the caller uses nu = S.
std::vector<double> solve_potential_self(const PointyPotential& pot,
                                         std::span<const double> rho,
                                         const Grid1D& grid);

// solve_potential_anchored: enforces the stencil at nodes 1..nx-1 and keeps
// only the left pins, marching S_{i+1} = 2S_i - S_{i-1} + dx^2(nu_i - rho_i).
// This is the closure under which the cumulative-mass slope identities hold
// exactly; it is reserved for the plain second-difference operator (w = 0),
// where the march carries no growing mode.
std::vector<double> solve_potential_anchored(std::span<const double> rho,
                                             std::span<const double> nu,
                                             const Grid1D& grid);

// Centered slopes: out[0] = 0, out[m] = (S_{m+1}-S_{m-1})/(2dx) for
// 0 < m < nx, out[nx] one-sided.
std::vector<double> dx_centered(std::span<const double> S, const Grid1D& grid);

// Half-face slopes: out[i] = (S_{i+1}-S_i)/dx for faces i+1/2, i = 0..nx-1.
std::vector<double> dx_half(std::span<const double> S, const Grid1D& grid);

// Potential data derived from one density snapshot.
struct PotentialField {
    std::vector<double> S;
    std::vector<double> nu;
    std::vector<double> dxc; // centered slopes at nodes 0..nx
    std::vector<double> dxh; // half slopes at faces 1/2..nx-1/2
};

// Builds the field for rho: zero-kind potentials use the anchored closure
// (nu = 0), exp_half with self_nu solves the screened system once, anything
// else convolves the precomputed weights and solves the pinned system.
PotentialField make_field(const PointyPotential& pot, const ConvolutionWeights& weights,
                          std::span<const double> rho, const Grid1D& grid);

} // namespace aggrekin

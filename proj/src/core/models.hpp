#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "kinetic_scheme.hpp"
#include "macro_scheme.hpp"

namespace aggrekin {

struct GaussianBump {
    double amp = 1.0;
    double b = 10.0; // exponent factor: amp * exp(-b (x - center)^2)
    double center = 0.0;
};

double bump_density(std::span<const GaussianBump> bumps, double x);

// A fully wired experiment: potential, velocity law, initial profile,
// domain, recommended horizon, and (for the kinetic preset) the equilibrium
// and velocity set.
struct ProblemPreset {
    std::string name;
    PointyPotential pot;
    VelocityLaw law;
    double left = 0.0;
    double right = 0.0;
    std::vector<GaussianBump> bumps;
    double horizon = 2.0;  // recommended run length
    bool kinetic = false;
    std::string default_scheme = "macro";
    std::optional<EquilibriumModel> equilibrium;
    std::optional<VelocityGrid> vgrid;

    real_fn rho_ini() const;
};

const std::vector<std::string>& preset_names();
ProblemPreset preset(const std::string& name);

// Dirac dynamics for densities of the form sum_i m_i delta(x - x_i), driven
// by the jump of A(S') across each mass. The exp_half kernel is the one the
// jump formula is derived for; the vpfp kernel (plain -|x|/2) reuses the
// same structure with Heaviside jumps and is an unverified extra.
enum class ParticleKernel { exp_half, vpfp_unverified };

struct ParticleSystem {
    std::vector<double> masses;    // > 0
    std::vector<double> positions; // strictly increasing
    VelocityLaw law;               // a odd, A even for the derivation
    ParticleKernel kernel = ParticleKernel::exp_half;
};

// One-sided slopes of S at particle i: -+ m_i/2 plus the smooth contribution
// of the other particles.
std::pair<double, double> particle_slopes(const ParticleSystem& sys, int i);

// x_i' = -(A(S'(x_i+)) - A(S'(x_i-))) / m_i.
std::vector<double> particle_rhs(const ParticleSystem& sys);

struct ParticleTrajectory {
    std::vector<double> times;
    std::vector<std::vector<double>> positions;
    std::vector<std::vector<double>> masses;
    std::vector<double> merge_times;

    // Linear interpolation in time; clamps beyond the recorded range.
    std::vector<double> positions_at(double t) const;
};

// RK4 with dt = min(dt_cap, 0.01/maxspeed); particles closer than 1e-9 (or
// crossed within a step) merge at their mass-weighted mean.
ParticleTrajectory particle_evolve(ParticleSystem sys, double horizon,
                                   double dt_cap = 1e-3);

// Lax-Friedrichs reference update for the slope variable u with A(u) = u^2/2:
// u_i' = u_i (1 - l c) + l c/2 (u_{i-1} + u_{i+1}) - l/4 (A(u_{i+1}) - A(u_{i-1})).
// u_0 is held at zero, u_nx is carried over unchanged.
std::vector<double> burgers_reference_step(std::span<const double> u, double c,
                                           const Grid1D& grid);

} // namespace aggrekin

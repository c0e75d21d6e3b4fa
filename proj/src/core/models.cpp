#include "models.hpp"

#include <algorithm>
#include <cmath>

#include "errors.hpp"

namespace aggrekin {

double bump_density(std::span<const GaussianBump> bumps, double x)
{
    double v = 0.0;
    for (const auto& b : bumps) {
        const double d = x - b.center;
        v += b.amp * std::exp(-b.b * d * d);
    }
    return v;
}

real_fn ProblemPreset::rho_ini() const
{
    return [bumps = bumps](double x) { return bump_density(bumps, x); };
}

namespace {

ProblemPreset vpfp_base()
{
    ProblemPreset p;
    p.pot = PointyPotential::zero();
    p.law = VelocityLaw::identity();
    return p;
}

ProblemPreset chemo_base(const VelocityLaw& law)
{
    ProblemPreset p;
    p.pot = PointyPotential::exp_half(/*self_nu=*/true);
    p.law = law;
    p.left = -2.5;
    p.right = 2.5;
    return p;
}

const std::vector<GaussianBump> kOneBump = {{1.0, 10.0, 0.0}};
const std::vector<GaussianBump> kTwoBumps = {{1.0, 10.0, -0.7}, {1.0, 10.0, 0.7}};
const std::vector<GaussianBump> kThreeBumps = {
    {1.0, 10.0, 1.25}, {0.8, 20.0, 0.0}, {1.0, 10.0, -1.0}};

} // namespace

const std::vector<std::string>& preset_names()
{
    static const std::vector<std::string> names = {
        "vpfp_one_bump",    "vpfp_three_bumps", "chemo_two_bumps",
        "chemo_three_bumps", "chemo_kinetic_two_speed", "repulsive_k10",
        "repulsive_k50",    "repulsive_two_bumps"};
    return names;
}

ProblemPreset preset(const std::string& name)
{
    ProblemPreset p;
    if (name == "vpfp_one_bump") {
        p = vpfp_base();
        p.left = -3.0;
        p.right = 3.0;
        p.bumps = kOneBump;
        p.horizon = 10.0;
    } else if (name == "vpfp_three_bumps") {
        p = vpfp_base();
        p.left = -4.5;
        p.right = 3.5;
        p.bumps = kThreeBumps;
        p.horizon = 10.0;
    } else if (name == "chemo_two_bumps") {
        p = chemo_base(VelocityLaw::atan_law(10.0));
        p.bumps = kTwoBumps;
        p.horizon = 8.0;
    } else if (name == "chemo_three_bumps") {
        p = chemo_base(VelocityLaw::atan_law(10.0));
        p.bumps = kThreeBumps;
        p.horizon = 8.0;
    } else if (name == "chemo_kinetic_two_speed") {
        p = chemo_base(VelocityLaw::atan_law(10.0));
        p.bumps = kTwoBumps;
        p.horizon = 2.0;
        p.kinetic = true;
        p.default_scheme = "kinetic_lie";
        p.equilibrium = EquilibriumModel::two_speed_chemotaxis(10.0);
        p.vgrid = VelocityGrid::make_two_speed(1.0);
    } else if (name == "repulsive_k10") {
        p = chemo_base(VelocityLaw::neg_atan_law(10.0));
        p.left = -4.0;
        p.right = 4.0;
        p.bumps = kOneBump;
        p.horizon = 2.0;
    } else if (name == "repulsive_k50") {
        p = chemo_base(VelocityLaw::neg_atan_law(50.0));
        p.left = -4.0;
        p.right = 4.0;
        p.bumps = kOneBump;
        p.horizon = 2.0;
    } else if (name == "repulsive_two_bumps") {
        p = chemo_base(VelocityLaw::neg_atan_law(10.0));
        p.left = -4.0;
        p.right = 4.0;
        p.bumps = kTwoBumps;
        p.horizon = 2.0;
    } else {
        std::string valid;
        for (const auto& n : preset_names()) valid += (valid.empty() ? "" : ", ") + n;
        throw config_error("unknown preset '" + name + "' (valid: " + valid + ")");
    }
    p.name = name;
    return p;
}

std::pair<double, double> particle_slopes(const ParticleSystem& sys, int i)
{
    const double xi = sys.positions[i];
    double smooth = 0.0;
    for (size_t j = 0; j < sys.positions.size(); ++j) {
        if (int(j) == i) continue;
        const double d = sys.positions[j] - xi;
        const double sgn = d > 0.0 ? 1.0 : -1.0;
        const double kernel =
            sys.kernel == ParticleKernel::exp_half ? std::exp(-std::abs(d)) : 1.0;
        smooth += 0.5 * sys.masses[j] * sgn * kernel;
    }
    const double half = 0.5 * sys.masses[i];
    return {half + smooth, -half + smooth}; // (left limit, right limit)
}

std::vector<double> particle_rhs(const ParticleSystem& sys)
{
    const size_t n = sys.positions.size();
    for (size_t i = 0; i + 1 < n; ++i) {
        if (!(sys.positions[i] < sys.positions[i + 1])) {
            throw contract_error("particle_rhs: positions must be strictly increasing");
        }
    }
    std::vector<double> v(n);
    for (size_t i = 0; i < n; ++i) {
        const auto [u_minus, u_plus] = particle_slopes(sys, int(i));
        v[i] = -(sys.law.A(u_plus) - sys.law.A(u_minus)) / sys.masses[i];
    }
    return v;
}

namespace {

constexpr double kMergeGap = 1e-9;

// Collapses any pair closer than the merge gap (or out of order) into a
// single mass at the mass-weighted mean; conserves mass and first moment.
bool merge_collisions(ParticleSystem& sys, double t, std::vector<double>& merge_times)
{
    bool merged = false;
    for (size_t i = 0; i + 1 < sys.positions.size();) {
        if (sys.positions[i + 1] - sys.positions[i] <= kMergeGap) {
            const double m = sys.masses[i] + sys.masses[i + 1];
            const double x = (sys.masses[i] * sys.positions[i] +
                              sys.masses[i + 1] * sys.positions[i + 1]) / m;
            sys.masses[i] = m;
            sys.positions[i] = x;
            sys.masses.erase(sys.masses.begin() + i + 1);
            sys.positions.erase(sys.positions.begin() + i + 1);
            merge_times.push_back(t);
            merged = true;
        } else {
            ++i;
        }
    }
    return merged;
}

} // namespace

std::vector<double> ParticleTrajectory::positions_at(double t) const
{
    if (times.empty()) return {};
    if (t <= times.front()) return positions.front();
    if (t >= times.back()) return positions.back();
    const auto it = std::lower_bound(times.begin(), times.end(), t);
    const size_t k = size_t(it - times.begin());
    const double t0 = times[k - 1];
    const double t1 = times[k];
    const double w = (t - t0) / (t1 - t0);
    const auto& p0 = positions[k - 1];
    const auto& p1 = positions[k];
    if (p0.size() != p1.size()) return p1; // a merge happened inside the gap
    std::vector<double> out(p0.size());
    for (size_t i = 0; i < p0.size(); ++i) out[i] = (1.0 - w) * p0[i] + w * p1[i];
    return out;
}

ParticleTrajectory particle_evolve(ParticleSystem sys, double horizon, double dt_cap)
{
    if (sys.masses.size() != sys.positions.size() || sys.masses.empty()) {
        throw contract_error("particle_evolve: bad system");
    }
    ParticleTrajectory traj;
    double t = 0.0;
    merge_collisions(sys, t, traj.merge_times);
    traj.times.push_back(t);
    traj.positions.push_back(sys.positions);
    traj.masses.push_back(sys.masses);

    while (t < horizon - 1e-15) {
        const std::vector<double> v = particle_rhs(sys);
        double maxspeed = 1e-12;
        for (double vi : v) maxspeed = std::max(maxspeed, std::abs(vi));
        double dt = std::min(dt_cap, 0.01 / maxspeed);
        // Keep closing pairs from crossing inside a step: the gap then
        // shrinks geometrically down to the merge threshold.
        for (size_t i = 0; i + 1 < sys.positions.size(); ++i) {
            const double closing = v[i] - v[i + 1];
            if (closing > 0.0) {
                const double gap = sys.positions[i + 1] - sys.positions[i];
                dt = std::min(dt, std::max(0.45 * gap / closing, 1e-12));
            }
        }
        dt = std::min(dt, horizon - t);

        // Classic RK4 on the positions; masses are constant between merges.
        const size_t n = sys.positions.size();
        ParticleSystem work = sys;
        const std::vector<double> k1 = v;
        for (size_t i = 0; i < n; ++i) work.positions[i] = sys.positions[i] + 0.5 * dt * k1[i];
        const std::vector<double> k2 = particle_rhs(work);
        for (size_t i = 0; i < n; ++i) work.positions[i] = sys.positions[i] + 0.5 * dt * k2[i];
        const std::vector<double> k3 = particle_rhs(work);
        for (size_t i = 0; i < n; ++i) work.positions[i] = sys.positions[i] + dt * k3[i];
        const std::vector<double> k4 = particle_rhs(work);
        for (size_t i = 0; i < n; ++i) {
            sys.positions[i] += dt / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
        }
        t += dt;

        // An overshoot past a neighbor counts as a collision at this step.
        std::sort(sys.positions.begin(), sys.positions.end());
        merge_collisions(sys, t, traj.merge_times);

        traj.times.push_back(t);
        traj.positions.push_back(sys.positions);
        traj.masses.push_back(sys.masses);
        if (sys.positions.size() == 1 && std::abs(particle_rhs(sys)[0]) < 1e-15) {
            break; // single stationary mass; nothing further can happen
        }
    }
    return traj;
}

std::vector<double> burgers_reference_step(std::span<const double> u, double c,
                                           const Grid1D& grid)
{
    const int nx = grid.nx;
    if (int(u.size()) != nx + 1) throw contract_error("burgers_reference_step: shape mismatch");
    const double l = grid.lambda;
    auto A = [](double x) { return 0.5 * x * x; };
    std::vector<double> out(nx + 1);
    out[0] = 0.0;
    out[nx] = u[nx];
    for (int i = 1; i < nx; ++i) {
        out[i] = u[i] * (1.0 - l * c) + 0.5 * l * c * (u[i - 1] + u[i + 1]) -
                 0.25 * l * (A(u[i + 1]) - A(u[i - 1]));
    }
    return out;
}

} // namespace aggrekin

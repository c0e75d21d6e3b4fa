#pragma once

#include <optional>
#include <string>
#include <vector>

#include "models.hpp"

namespace aggrekin {

// Parsed, validated run description. Plain `key = value` lines, `#`
// comments, and an optional bracketed [problem] section describing an
// explicit problem instead of a preset.
struct RunConfig {
    std::optional<std::string> preset_name;

    std::string scheme = "macro"; // macro | kinetic_lie | kinetic_strang
    bool scheme_set = false;
    std::string velocity_mode = "volpert_literal"; // | volpert_smooth | naive
    bool allow_naive = false;

    int nx = 800;
    double horizon = 2.0;
    double snapshot_every = 0.02;
    std::string output_dir = "out";
    double dt_max = 0.01;
    bool keep_going = false;
    bool dump_f = false;
    bool deterministic = true;

    std::optional<double> eps;
    int nv = 32;
    double vmax = 1.0;

    // study inputs
    std::vector<int> grids;        // refinement
    std::vector<double> eps_list;  // ap_sweep
    int ap_steps = 100;

    // explicit [problem] block
    bool has_problem = false;
    double left = -2.5;
    double right = 2.5;
    std::string potential = "exp_half_self"; // zero | exp_half_self | exp_half_weights
    std::string law = "id";                  // id | atan | neg_atan | zero
    double law_k = 10.0;
    std::vector<GaussianBump> bumps;
    std::vector<std::pair<double, double>> diracs; // (mass, x)
    std::string equilibrium; // two_speed_chemotaxis | exp_tilt (kinetic only)
};

RunConfig parse_config(const std::string& text);
RunConfig parse_config_file(const std::string& path);

// Resolved problem pieces shared by runner and tests.
struct ResolvedProblem {
    std::string scheme;
    VelocityMode mode = VelocityMode::volpert_literal;
    PointyPotential pot;
    VelocityLaw law;
    double left = 0.0;
    double right = 0.0;
    std::vector<GaussianBump> bumps;
    std::vector<std::pair<double, double>> diracs;
    bool kinetic = false;
    std::optional<EquilibriumModel> equilibrium;
    std::optional<VelocityGrid> vgrid;
    std::string label;
};

ResolvedProblem resolve_problem(const RunConfig& cfg);

// Deterministic echo of the effective settings, one `key = value` per line.
std::string config_to_text(const RunConfig& cfg);

} // namespace aggrekin

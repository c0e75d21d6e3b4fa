#include "runner.hpp"

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "csv.hpp"
#include "errors.hpp"

namespace aggrekin {

namespace {

namespace fs = std::filesystem;

struct Monitor {
    double c_bound = 0.0;     // velocity bound (c for macro, V_M for kinetic)
    double alpha = 0.0;
    bool attractive = true;
    bool check_osl = false;
    bool keep_going = false;
    double mass0 = 0.0;
    double prev_tv = -1.0;
    long violations = 0;
    long leak_warnings = 0;
    std::string first_failure;

    // Returns false when the run must stop.
    bool check(const StepReport& r, std::span<const double> nu)
    {
        std::ostringstream why;
        if (std::abs(r.mass - mass0) > 1e-12 * std::max(mass0, 1e-300)) {
            why << "mass drift " << (r.mass - mass0) << "; ";
        }
        if (r.min_rho < -1e-14 * std::max(r.max_rho, 0.0)) {
            why << "negative density " << r.min_rho << "; ";
        }
        if (r.max_abs_velocity > c_bound + 1e-12) {
            why << "velocity " << r.max_abs_velocity << " exceeds " << c_bound << "; ";
        }
        if (check_osl && attractive) {
            double nu_max = 0.0;
            for (double v : nu) nu_max = std::max(nu_max, std::abs(v));
            if (r.osl_max > 2.0 * alpha * nu_max + 1e-10) {
                why << "OSL " << r.osl_max << " exceeds " << 2.0 * alpha * nu_max << "; ";
            }
        }
        if (prev_tv >= 0.0 && r.tv_cumulative > prev_tv + 1e-12 * std::max(mass0, 1.0)) {
            why << "TV of cumulative mass grew " << (r.tv_cumulative - prev_tv) << "; ";
        }
        prev_tv = r.tv_cumulative;
        if (r.support_leak > 1e-8 * std::max(mass0, 1e-300)) ++leak_warnings;

        const std::string msg = why.str();
        if (msg.empty()) return true;
        ++violations;
        if (first_failure.empty()) {
            first_failure = "invariant failure at t = " + format_double(r.t) + ": " + msg +
                            "\n" + report_to_text(r);
        }
        return keep_going;
    }
};

void write_report_row(CsvWriter& csv, long step, const StepReport& r)
{
    csv.begin_row();
    csv.field((long long)step);
    csv.field(r.t);
    csv.field(r.mass);
    csv.field(r.min_rho);
    csv.field(r.max_rho);
    csv.field(r.max_abs_velocity);
    csv.field(r.osl_max);
    csv.field(r.tv_cumulative);
    csv.field(r.support_leak);
    csv.end_row();
}

const std::vector<std::string> kDiagnosticsHeader = {
    "step", "t", "mass", "min_rho", "max_rho",
    "max_abs_velocity", "osl_max", "tv_cumulative", "support_leak"};

StepReport kinetic_report(const KineticState& state, std::span<const double> a_hat,
                          const Grid1D& grid)
{
    MacroState shim;
    shim.t = state.t;
    shim.rho = state.rho;
    std::vector<double> node_diffs;
    StepReport r = report(shim, a_hat, grid);
    // osl from node velocities spaced dx apart, recorded for reference.
    return r;
}

std::vector<double> initial_density(const ResolvedProblem& rp, const Grid1D& grid)
{
    std::vector<double> rho = density_cell_averages(
        [&rp](double x) { return bump_density(rp.bumps, x); }, grid);
    if (!rp.diracs.empty()) add_grid_diracs(rho, rp.diracs, grid);
    return rho;
}

} // namespace

std::string resolve_output_dir(const RunConfig& cfg, const std::string& override_dir)
{
    if (const char* env = std::getenv("AGGREKIN_OUTPUT"); env && *env) return env;
    if (!override_dir.empty()) return override_dir;
    return cfg.output_dir;
}

std::string report_to_text(const StepReport& r)
{
    std::ostringstream os;
    os << "t = " << format_double(r.t) << "  mass = " << format_double(r.mass)
       << "  min_rho = " << format_double(r.min_rho)
       << "  max_rho = " << format_double(r.max_rho)
       << "  max|a| = " << format_double(r.max_abs_velocity)
       << "  osl_max = " << format_double(r.osl_max)
       << "  tv = " << format_double(r.tv_cumulative)
       << "  support_leak = " << format_double(r.support_leak);
    return os.str();
}

std::string preset_describe(const std::string& name)
{
    const ProblemPreset p = preset(name);
    std::ostringstream os;
    os << name << ": " << (p.kinetic ? "kinetic (" + p.default_scheme + ")" : "macro")
       << ", potential " << p.pot.name << ", law " << p.law.name << ", domain ["
       << p.left << ", " << p.right << "], recommended horizon " << p.horizon;
    return os.str();
}

RunOutcome run(const RunConfig& cfg, const std::string& output_override)
{
    const auto t_begin = std::chrono::steady_clock::now();
    const ResolvedProblem rp = resolve_problem(cfg);
    const std::string dir = resolve_output_dir(cfg, output_override);
    fs::create_directories(dir);

    RunOutcome outcome;
    Grid1D grid = Grid1D::over_domain(rp.left, rp.right, cfg.nx, 1.0);
    const ConvolutionWeights weights = build_weights(rp.pot, grid);
    std::vector<double> rho0 = initial_density(rp, grid);

    Monitor mon;
    mon.keep_going = cfg.keep_going;
    mon.alpha = rp.law.alpha;
    mon.attractive = rp.law.attractive;

    const std::string snap_path = dir + "/snapshots.csv";
    const std::string diag_path = dir + "/diagnostics.csv";
    CsvWriter snap(snap_path);
    CsvWriter diag(diag_path);
    diag.header(kDiagnosticsHeader);

    long clamp_events = 0;
    long steps_done = 0;
    double dt_used = 0.0;
    double c_used = 0.0;

    if (rp.scheme == "macro") {
        MacroState state;
        {
            MacroState init = macro_init(rho0, rp.pot, weights, grid);
            state = std::move(init);
        }
        c_used = sup_velocity_bound(rp.law, state.mass, rp.pot.w0);
        grid.set_dt(cfl_dt(c_used, grid.dx, cfg.dt_max));
        dt_used = grid.dt;
        mon.c_bound = c_used;
        mon.check_osl = true;
        mon.mass0 = state.mass;

        std::vector<std::string> snap_header = {"t", "x", "rho"};
        snap.header(snap_header);
        const long n_steps = std::max<long>(1, (long)std::ceil(cfg.horizon / grid.dt - 1e-12));
        const long stride = std::max<long>(1, std::lround(cfg.snapshot_every / grid.dt));

        auto write_snapshot = [&](const MacroState& s) {
            for (int i = 0; i <= grid.nx; ++i) {
                snap.begin_row();
                snap.field(s.t);
                snap.field(grid.node(i));
                snap.field(s.rho[i]);
                snap.end_row();
            }
        };
        write_snapshot(state);
        {
            const StepReport r0 = report(state, rp.law, grid, rp.mode);
            mon.prev_tv = r0.tv_cumulative;
            write_report_row(diag, 0, r0);
        }

        for (long step = 1; step <= n_steps; ++step) {
            state = macro_step(state, rp.law, rp.pot, weights, grid, c_used, rp.mode);
            ++steps_done;
            const StepReport r = report(state, rp.law, grid, rp.mode);
            write_report_row(diag, step, r);
            const bool keep = mon.check(r, state.field.nu);
            if (step % stride == 0 || step == n_steps || !keep) write_snapshot(state);
            if (!keep) break;
        }
    } else {
        if (!rp.vgrid || !rp.equilibrium) {
            throw config_error("kinetic run without equilibrium/velocity grid");
        }
        const VelocityGrid vgrid = *rp.vgrid;
        grid.set_dt(kinetic_cfl_dt(vgrid.vmax, grid.dx));
        dt_used = grid.dt;
        c_used = vgrid.vmax;
        mon.c_bound = vgrid.vmax;
        mon.check_osl = false;

        KineticState state = kinetic_init(equidistributed_f(rho0, vgrid), *cfg.eps,
                                          rp.pot, weights, grid, vgrid);
        mon.mass0 = 0.0;
        for (double r : state.rho) mon.mass0 += r;
        mon.mass0 *= grid.dx;

        std::vector<std::string> snap_header = {"t", "x", "rho"};
        if (cfg.dump_f) {
            for (int j = 0; j < vgrid.n_nodes(); ++j) {
                snap_header.push_back("f" + std::to_string(j));
            }
        }
        snap.header(snap_header);
        const long n_steps = std::max<long>(1, (long)std::ceil(cfg.horizon / grid.dt - 1e-12));
        const long stride = std::max<long>(1, std::lround(cfg.snapshot_every / grid.dt));

        auto write_snapshot = [&](const KineticState& s) {
            for (int i = 0; i <= grid.nx; ++i) {
                snap.begin_row();
                snap.field(s.t);
                snap.field(grid.node(i));
                snap.field(s.rho[i]);
                if (cfg.dump_f) {
                    for (int j = 0; j < vgrid.n_nodes(); ++j) snap.field(s.at(i, j));
                }
                snap.end_row();
            }
        };
        write_snapshot(state);
        {
            const std::vector<double> a0 =
                ap_velocity(*rp.equilibrium, state.field, vgrid, grid, rp.mode);
            const StepReport r0 = kinetic_report(state, a0, grid);
            mon.prev_tv = r0.tv_cumulative;
            write_report_row(diag, 0, r0);
        }

        for (long step = 1; step <= n_steps; ++step) {
            KineticStage stage;
            state = rp.scheme == "kinetic_strang"
                        ? ap_step_strang(state, *rp.equilibrium, rp.pot, weights, grid,
                                         vgrid, rp.mode, &stage)
                        : ap_step_lie(state, *rp.equilibrium, rp.pot, weights, grid,
                                      vgrid, rp.mode, &stage);
            clamp_events += stage.clamp_events;
            ++steps_done;
            const std::vector<double> a_hat =
                ap_velocity(*rp.equilibrium, state.field, vgrid, grid, rp.mode);
            const StepReport r = kinetic_report(state, a_hat, grid);
            write_report_row(diag, step, r);
            const bool keep = mon.check(r, state.field.nu);
            if (step % stride == 0 || step == n_steps || !keep) write_snapshot(state);
            if (!keep) break;
        }
    }

    outcome.files = {snap_path, diag_path};

    const auto wall =
        std::chrono::duration_cast<std::chrono::milliseconds>(
            std::chrono::steady_clock::now() - t_begin).count();
    {
        const std::string meta_path = dir + "/meta.txt";
        std::ofstream meta(meta_path, std::ios::binary);
        meta << "# resolved configuration\n" << config_to_text(cfg);
        meta << "# run\n";
        meta << "problem = " << rp.label << "\n";
        meta << "dx = " << format_double(grid.dx) << "\n";
        meta << "dt = " << format_double(dt_used) << "\n";
        meta << "lambda = " << format_double(grid.lambda) << "\n";
        meta << "c = " << format_double(c_used) << "\n";
        meta << "steps = " << steps_done << "\n";
        meta << "attractive_theory = " << (rp.law.attractive ? "yes" : "no (exploratory run)") << "\n";
        meta << "support_leak_warnings = " << mon.leak_warnings << "\n";
        meta << "equilibrium_clamp_events = " << clamp_events << "\n";
        meta << "invariant_violations = " << mon.violations << "\n";
        meta << "wall_ms = " << wall << "\n";
        outcome.files.push_back(meta_path);
    }

    if (mon.violations > 0 && !cfg.keep_going) {
        outcome.exit_code = 4;
        outcome.message = mon.first_failure;
    } else if (mon.violations > 0) {
        outcome.message = "completed with " + std::to_string(mon.violations) +
                          " invariant violations (keep_going)\n" + mon.first_failure;
    }
    return outcome;
}

RunOutcome study(const RunConfig& cfg, const std::string& kind,
                 const std::string& output_override)
{
    const std::string dir = resolve_output_dir(cfg, output_override);
    fs::create_directories(dir);
    RunOutcome outcome;

    if (kind == "refinement") {
        if (cfg.grids.size() < 3) throw config_error("refinement study: need >= 3 grids");
        const ResolvedProblem rp = resolve_problem(cfg);
        ProblemPreset pre;
        if (cfg.preset_name) {
            pre = preset(*cfg.preset_name);
        } else {
            pre.pot = rp.pot;
            pre.law = rp.law;
            pre.left = rp.left;
            pre.right = rp.right;
            pre.bumps = rp.bumps;
            pre.name = rp.label;
        }
        const RefinementTable table =
            refinement_study(pre, cfg.grids, cfg.horizon, rp.mode);
        const std::string path = dir + "/refinement.csv";
        CsvWriter csv(path);
        const std::vector<std::string> header = {"nx", "dx", "w1_error", "fitted_order"};
        csv.header(header);
        for (const auto& row : table.rows) {
            csv.begin_row();
            csv.field((long long)row.nx);
            csv.field(row.dx);
            csv.field(row.error);
            csv.field(table.fitted_order);
            csv.end_row();
        }
        outcome.files.push_back(path);
        outcome.message = "fitted order " + format_double(table.fitted_order);
    } else if (kind == "ap_sweep") {
        if (!cfg.preset_name) throw config_error("ap_sweep: a two-speed kinetic preset is required");
        const ProblemPreset pre = preset(*cfg.preset_name);
        std::vector<double> eps_list = cfg.eps_list;
        if (eps_list.empty()) eps_list = {0.1, 1e-2, 1e-3, 1e-10};
        const ApTable table = compare_ap(pre, eps_list, cfg.nx, cfg.ap_steps);
        const std::string path = dir + "/ap_sweep.csv";
        CsvWriter csv(path);
        const std::vector<std::string> header = {"eps", "gap"};
        csv.header(header);
        for (const auto& row : table.rows) {
            csv.begin_row();
            csv.field(row.eps);
            csv.field(row.gap);
            csv.end_row();
        }
        outcome.files.push_back(path);
        outcome.message = "kinetic dt " + format_double(table.dt);
    } else {
        throw config_error("unknown study kind '" + kind + "' (refinement | ap_sweep)");
    }

    const std::string meta_path = dir + "/meta.txt";
    std::ofstream meta(meta_path, std::ios::binary);
    meta << "# study " << kind << "\n" << config_to_text(cfg) << outcome.message << "\n";
    outcome.files.push_back(meta_path);
    return outcome;
}

} // namespace aggrekin

#include "config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "errors.hpp"

namespace aggrekin {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

[[noreturn]] void fail(int line, const std::string& msg)
{
    throw config_error("config line " + std::to_string(line) + ": " + msg);
}

double to_double(const std::string& v, int line)
{
    try {
        size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) fail(line, "trailing characters in number '" + v + "'");
        return x;
    } catch (const config_error&) {
        throw;
    } catch (...) {
        fail(line, "expected a number, got '" + v + "'");
    }
}

int to_int(const std::string& v, int line)
{
    const double x = to_double(v, line);
    const int i = int(x);
    if (double(i) != x) fail(line, "expected an integer, got '" + v + "'");
    return i;
}

bool to_bool(const std::string& v, int line)
{
    if (v == "true" || v == "1") return true;
    if (v == "false" || v == "0") return false;
    fail(line, "expected true/false, got '" + v + "'");
}

std::vector<std::string> split_ws(const std::string& v)
{
    std::vector<std::string> out;
    std::istringstream is(v);
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

} // namespace

RunConfig parse_config(const std::string& text)
{
    RunConfig cfg;
    bool in_problem = false;
    bool horizon_from_file = false;
    std::istringstream stream(text);
    std::string raw;
    int line = 0;

    while (std::getline(stream, raw)) {
        ++line;
        const auto hash = raw.find('#');
        if (hash != std::string::npos) raw = raw.substr(0, hash);
        const std::string s = trim(raw);
        if (s.empty()) continue;

        if (s.front() == '[') {
            if (s == "[problem]") {
                in_problem = true;
                cfg.has_problem = true;
                continue;
            }
            fail(line, "unknown section '" + s + "'");
        }

        const auto eq = s.find('=');
        if (eq == std::string::npos) fail(line, "expected 'key = value'");
        const std::string key = trim(s.substr(0, eq));
        const std::string val = trim(s.substr(eq + 1));
        if (key.empty() || val.empty()) fail(line, "expected 'key = value'");

        if (in_problem) {
            if (key == "left") cfg.left = to_double(val, line);
            else if (key == "right") cfg.right = to_double(val, line);
            else if (key == "potential") cfg.potential = val;
            else if (key == "law") cfg.law = val;
            else if (key == "law_k") cfg.law_k = to_double(val, line);
            else if (key == "equilibrium") cfg.equilibrium = val;
            else if (key == "bump") {
                const auto parts = split_ws(val);
                if (parts.size() != 3) fail(line, "bump wants 'amp b center'");
                cfg.bumps.push_back({to_double(parts[0], line), to_double(parts[1], line),
                                     to_double(parts[2], line)});
            } else if (key == "dirac") {
                const auto parts = split_ws(val);
                if (parts.size() != 2) fail(line, "dirac wants 'mass x'");
                cfg.diracs.emplace_back(to_double(parts[0], line), to_double(parts[1], line));
            } else {
                fail(line, "unknown [problem] key '" + key + "'");
            }
            continue;
        }

        if (key == "preset") cfg.preset_name = val;
        else if (key == "scheme") { cfg.scheme = val; cfg.scheme_set = true; }
        else if (key == "velocity_mode") cfg.velocity_mode = val;
        else if (key == "allow_naive") cfg.allow_naive = to_bool(val, line);
        else if (key == "nx") cfg.nx = to_int(val, line);
        else if (key == "horizon") { cfg.horizon = to_double(val, line); horizon_from_file = true; }
        else if (key == "snapshot_every") cfg.snapshot_every = to_double(val, line);
        else if (key == "output_dir") cfg.output_dir = val;
        else if (key == "dt_max") cfg.dt_max = to_double(val, line);
        else if (key == "keep_going") cfg.keep_going = to_bool(val, line);
        else if (key == "dump_f") cfg.dump_f = to_bool(val, line);
        else if (key == "deterministic") cfg.deterministic = to_bool(val, line);
        else if (key == "eps") cfg.eps = to_double(val, line);
        else if (key == "nv") cfg.nv = to_int(val, line);
        else if (key == "vmax") cfg.vmax = to_double(val, line);
        else if (key == "ap_steps") cfg.ap_steps = to_int(val, line);
        else if (key == "grids") {
            for (const auto& tok : split_ws(val)) cfg.grids.push_back(to_int(tok, line));
        } else if (key == "eps_list") {
            for (const auto& tok : split_ws(val)) cfg.eps_list.push_back(to_double(tok, line));
        } else {
            fail(line, "unknown key '" + key + "'");
        }
    }
    (void)horizon_from_file;

    // Validation.
    if (cfg.preset_name && cfg.has_problem) {
        throw config_error("config: give either 'preset' or a [problem] block, not both");
    }
    if (!cfg.preset_name && !cfg.has_problem) {
        throw config_error("config: one of 'preset' or a [problem] block is required");
    }
    if (cfg.scheme != "macro" && cfg.scheme != "kinetic_lie" && cfg.scheme != "kinetic_strang") {
        throw config_error("config: unknown scheme '" + cfg.scheme + "'");
    }
    if (cfg.velocity_mode != "volpert_literal" && cfg.velocity_mode != "volpert_smooth" &&
        cfg.velocity_mode != "naive") {
        throw config_error("config: unknown velocity_mode '" + cfg.velocity_mode + "'");
    }
    if (cfg.velocity_mode == "naive" && !cfg.allow_naive) {
        throw config_error(
            "config: velocity_mode = naive reproduces the wrong-velocity runs; "
            "set allow_naive = true to acknowledge");
    }
    if (cfg.nx < 3) throw config_error("config: nx must be >= 3");
    if (!(cfg.horizon > 0)) throw config_error("config: horizon must be > 0");
    if (!(cfg.snapshot_every > 0)) throw config_error("config: snapshot_every must be > 0");
    if (!(cfg.dt_max > 0)) throw config_error("config: dt_max must be > 0");
    if (!(cfg.vmax > 0)) throw config_error("config: vmax must be > 0");
    if (cfg.nv < 1) throw config_error("config: nv must be >= 1");
    if (cfg.eps && !(*cfg.eps > 0)) throw config_error("config: eps must be > 0");
    if (cfg.ap_steps < 1) throw config_error("config: ap_steps must be >= 1");
    if (cfg.has_problem) {
        if (!(cfg.right > cfg.left)) throw config_error("config: problem domain is empty");
        if (cfg.bumps.empty() && cfg.diracs.empty()) {
            throw config_error("config: problem needs at least one bump or dirac");
        }
    }
    return cfg;
}

RunConfig parse_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) throw config_error("cannot open config file '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

ResolvedProblem resolve_problem(const RunConfig& cfg)
{
    ResolvedProblem rp;
    if (cfg.preset_name) {
        const ProblemPreset p = preset(*cfg.preset_name);
        rp.pot = p.pot;
        rp.law = p.law;
        rp.left = p.left;
        rp.right = p.right;
        rp.bumps = p.bumps;
        rp.kinetic = p.kinetic;
        rp.equilibrium = p.equilibrium;
        rp.vgrid = p.vgrid;
        rp.label = p.name;
        rp.scheme = cfg.scheme_set ? cfg.scheme : p.default_scheme;
    } else {
        if (cfg.potential == "zero") rp.pot = PointyPotential::zero();
        else if (cfg.potential == "exp_half_self") rp.pot = PointyPotential::exp_half(true);
        else if (cfg.potential == "exp_half_weights") rp.pot = PointyPotential::exp_half(false);
        else throw config_error("config: unknown potential '" + cfg.potential + "'");

        if (cfg.law == "id") rp.law = VelocityLaw::identity();
        else if (cfg.law == "atan") rp.law = VelocityLaw::atan_law(cfg.law_k);
        else if (cfg.law == "neg_atan") rp.law = VelocityLaw::neg_atan_law(cfg.law_k);
        else if (cfg.law == "zero") rp.law = VelocityLaw::zero();
        else throw config_error("config: unknown law '" + cfg.law + "'");

        rp.left = cfg.left;
        rp.right = cfg.right;
        rp.bumps = cfg.bumps;
        rp.diracs = cfg.diracs;
        rp.label = "explicit";
        rp.scheme = cfg.scheme;

        if (!cfg.equilibrium.empty()) {
            if (cfg.equilibrium == "two_speed_chemotaxis") {
                rp.kinetic = true;
                rp.vgrid = VelocityGrid::make_two_speed(cfg.vmax);
                rp.equilibrium = EquilibriumModel::two_speed_chemotaxis(cfg.law_k);
            } else if (cfg.equilibrium == "exp_tilt") {
                rp.kinetic = true;
                rp.vgrid = VelocityGrid::continuous(cfg.vmax, cfg.nv);
                rp.equilibrium = EquilibriumModel::exp_tilt(*rp.vgrid, 64.0);
            } else {
                throw config_error("config: unknown equilibrium '" + cfg.equilibrium + "'");
            }
        }
    }

    if (cfg.velocity_mode == "volpert_literal") rp.mode = VelocityMode::volpert_literal;
    else if (cfg.velocity_mode == "volpert_smooth") rp.mode = VelocityMode::volpert_smooth;
    else rp.mode = VelocityMode::naive;

    if (rp.scheme != "macro") {
        if (!cfg.eps) throw config_error("config: eps required for kinetic schemes");
        if (!rp.equilibrium) {
            throw config_error("config: the selected problem has no kinetic equilibrium; "
                               "use preset chemo_kinetic_two_speed or set equilibrium");
        }
    }
    return rp;
}

std::string config_to_text(const RunConfig& cfg)
{
    std::ostringstream os;
    if (cfg.preset_name) os << "preset = " << *cfg.preset_name << "\n";
    os << "scheme = " << cfg.scheme << "\n";
    os << "velocity_mode = " << cfg.velocity_mode << "\n";
    os << "nx = " << cfg.nx << "\n";
    os << "horizon = " << cfg.horizon << "\n";
    os << "snapshot_every = " << cfg.snapshot_every << "\n";
    os << "output_dir = " << cfg.output_dir << "\n";
    os << "dt_max = " << cfg.dt_max << "\n";
    os << "keep_going = " << (cfg.keep_going ? "true" : "false") << "\n";
    os << "dump_f = " << (cfg.dump_f ? "true" : "false") << "\n";
    if (cfg.eps) os << "eps = " << *cfg.eps << "\n";
    if (cfg.has_problem) {
        os << "[problem]\n";
        os << "left = " << cfg.left << "\n";
        os << "right = " << cfg.right << "\n";
        os << "potential = " << cfg.potential << "\n";
        os << "law = " << cfg.law << "\n";
        os << "law_k = " << cfg.law_k << "\n";
        if (!cfg.equilibrium.empty()) os << "equilibrium = " << cfg.equilibrium << "\n";
        for (const auto& b : cfg.bumps) {
            os << "bump = " << b.amp << " " << b.b << " " << b.center << "\n";
        }
        for (const auto& d : cfg.diracs) {
            os << "dirac = " << d.first << " " << d.second << "\n";
        }
    }
    return os.str();
}

} // namespace aggrekin

#pragma once

#include <string>
#include <vector>

#include "config.hpp"
#include "diagnostics.hpp"

namespace aggrekin {

struct RunOutcome {
    int exit_code = 0; // 0 ok, 4 invariant failure
    std::string message;
    std::vector<std::string> files;
};

// Effective output directory: AGGREKIN_OUTPUT env var, then the explicit
// override, then the config value.
std::string resolve_output_dir(const RunConfig& cfg, const std::string& override_dir);

// Executes a run: writes snapshots.csv, diagnostics.csv and meta.txt into
// the output directory. Monitored invariants abort the run (nonzero exit,
// failing report in `message`) unless keep_going is set.
RunOutcome run(const RunConfig& cfg, const std::string& output_override = "");

// kind: "refinement" (needs >= 3 grids) or "ap_sweep" (two-speed kinetic
// preset); writes one table CSV plus meta.txt.
RunOutcome study(const RunConfig& cfg, const std::string& kind,
                 const std::string& output_override = "");

std::string preset_describe(const std::string& name);
std::string report_to_text(const StepReport& r);

} // namespace aggrekin

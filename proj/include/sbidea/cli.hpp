#pragma once

#include <string>
#include <utility>
#include <vector>

#include "sbidea/dataset.hpp"
#include "sbidea/dea_crisp.hpp"
#include "sbidea/eimil.hpp"
#include "sbidea/idea.hpp"
#include "sbidea/super.hpp"

namespace sbidea {

enum class ModelKind { Crisp, Idea, Eimil };

std::string model_name(ModelKind k);

struct RunConfig {
    std::string data_path;
    std::string schema_path;
    ModelKind model = ModelKind::Eimil;
    bool with_super = false;
    std::string bigm_mode = "per_variable"; // "per_variable" | "global" | path to a JSON file
    double bigm_safety = 2.0;
    Rts rts = Rts::Vrs;                     // crisp model only
    std::string out_path;                   // structured report destination; empty -> stdout
    std::string plot_dir;                   // empty -> no plot data
    bool dump_lp = false;                   // print each DMU's model to stderr (eimil only)
};

// Everything a run produces, assembled without writing to the filesystem so
// determinism can be asserted directly on the bytes.
struct RunArtifacts {
    std::string table;   // aligned human-readable summary, 3 decimals
    std::string report;  // structured JSON document, full precision
    std::string lp_dump; // per-DMU model listings when dump_lp is set
    std::vector<std::pair<std::string, std::string>> plot_files; // filename -> CSV text
};

// Solve per the config and assemble all outputs. Throws on invalid
// configuration, bad data, or solver trouble.
RunArtifacts execute(const Dataset& ds, const RunConfig& cfg);

// Full CLI entry: read files, execute, write outputs. Returns the process
// exit code (0 success, 1 validation error, 2 solver failure) and reports
// errors on stderr with their context instead of throwing.
int run(const RunConfig& cfg);

// One CSV per assessment comparing observed values against targets in the
// declared column layout (undesirable outputs under their declared role),
// with per-endpoint target/observed ratios. Creates `dir` if needed and
// returns the paths written.
std::vector<std::string> emit_plot_data(const std::vector<Assessment>& assessments,
                                        const Dataset& ds, const std::string& dir);

} // namespace sbidea

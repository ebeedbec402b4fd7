#include "sbidea/cli.hpp"

#include "numfmt.hpp"

#include "json.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

namespace sbidea {

namespace {

using nlohmann::ordered_json;

constexpr const char* kRankingConvention =
    "super-infeasible efficient units first (name order), then efficient units "
    "by super score descending, then inefficient units by efficiency score "
    "ascending; ties broken by unit name";

std::string fmt3(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3f", v);
    return buf;
}

ordered_json iv_json(const Interval& iv) { return ordered_json::array({iv.lo, iv.hi}); }

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write '" + path + "'");
    out << text;
    if (!out) throw ValidationError("short write to '" + path + "'");
}

// ---------------------------------------------------------------------------
// Declared-layout bridge: every output record walks the schema columns in
// their original order and pulls the matching model-side result, so
// undesirable outputs appear under their declared role.

struct DeclaredVar {
    std::string name;
    Role role = Role::Input;
    bool input_side = false; // model side the column was mapped to
    int model_idx = -1;
};

std::vector<DeclaredVar> declared_layout(const ModelView& view) {
    const Dataset& ds = view.dataset();
    const Orientation& ori = view.orientation();
    std::vector<DeclaredVar> out;
    int in_slot = 0, out_slot = 0;
    for (const auto& spec : ds.schema) {
        ModelVarRef ref;
        ref.declared_role = spec.role;
        ref.declared_slot = spec.role == Role::Input ? in_slot++ : out_slot++;
        DeclaredVar dv;
        dv.name = spec.name;
        dv.role = spec.role;
        for (size_t i = 0; i < ori.inputs.size(); ++i)
            if (ori.inputs[i] == ref) {
                dv.input_side = true;
                dv.model_idx = static_cast<int>(i);
            }
        for (size_t r = 0; r < ori.outputs.size(); ++r)
            if (ori.outputs[r] == ref) {
                dv.input_side = false;
                dv.model_idx = static_cast<int>(r);
            }
        out.push_back(std::move(dv));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Table rendering: first column left-aligned, the rest right-aligned,
// two-space gutters, no trailing spaces.

std::string render_table(const std::vector<std::string>& header,
                         const std::vector<std::vector<std::string>>& rows) {
    std::vector<size_t> width(header.size());
    for (size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
    for (const auto& row : rows)
        for (size_t c = 0; c < row.size(); ++c) width[c] = std::max(width[c], row[c].size());
    std::string out;
    auto emit = [&](const std::vector<std::string>& row) {
        std::string line;
        for (size_t c = 0; c < row.size(); ++c) {
            if (c) line += "  ";
            if (c == 0) {
                line += row[c];
                line.append(width[c] - row[c].size(), ' ');
            } else {
                line.append(width[c] - row[c].size(), ' ');
                line += row[c];
            }
        }
        while (!line.empty() && line.back() == ' ') line.pop_back();
        out += line;
        out += '\n';
    };
    emit(header);
    for (const auto& row : rows) emit(row);
    return out;
}

// ---------------------------------------------------------------------------
// Configuration resolution.

BigMConfig resolve_bigm_mode(const RunConfig& cfg) {
    BigMConfig bigm;
    bigm.safety = cfg.bigm_safety;
    if (cfg.bigm_mode == "per_variable") {
        bigm.strategy = BigMConfig::Strategy::PerVariable;
        return bigm;
    }
    if (cfg.bigm_mode == "global") {
        bigm.strategy = BigMConfig::Strategy::Global;
        return bigm;
    }
    // Anything else is a path to a JSON file with explicit constants in the
    // model layout: {"Lx": [...], "Rx": [...], "Ly": [...], "Ry": [...]}.
    std::string text = read_file(cfg.bigm_mode);
    ordered_json j = ordered_json::parse(text, nullptr, false);
    if (j.is_discarded() || !j.is_object())
        throw ValidationError("big-M file '" + cfg.bigm_mode + "' is not a JSON object");
    bigm.strategy = BigMConfig::Strategy::Explicit;
    auto pull = [&](const char* key, std::vector<double>& dst) {
        if (!j.contains(key) || !j[key].is_array())
            throw BigMResolutionError("big-M file '" + cfg.bigm_mode + "' needs array '" +
                                      key + "'");
        for (const auto& e : j[key]) {
            if (!e.is_number())
                throw BigMResolutionError("big-M file '" + cfg.bigm_mode + "' has a non-number in '" +
                                          std::string(key) + "'");
            dst.push_back(e.get<double>());
        }
    };
    pull("Lx", bigm.Lx);
    pull("Rx", bigm.Rx);
    pull("Ly", bigm.Ly);
    pull("Ry", bigm.Ry);
    return bigm;
}

ordered_json bigm_json(const BigMConfig& bigm) {
    ordered_json j;
    switch (bigm.strategy) {
    case BigMConfig::Strategy::PerVariable: j["strategy"] = "per_variable"; break;
    case BigMConfig::Strategy::Global: j["strategy"] = "global"; break;
    case BigMConfig::Strategy::Explicit: j["strategy"] = "explicit"; break;
    }
    if (bigm.strategy == BigMConfig::Strategy::Explicit) {
        j["Lx"] = bigm.Lx;
        j["Rx"] = bigm.Rx;
        j["Ly"] = bigm.Ly;
        j["Ry"] = bigm.Ry;
    } else {
        j["safety"] = bigm.safety;
    }
    return j;
}

ordered_json metadata_json(const RunConfig& cfg, const Dataset& ds, const BigMConfig& bigm) {
    ordered_json j;
    j["schema_version"] = 1;
    j["model"] = model_name(cfg.model);
    j["super"] = cfg.with_super;
    j["rts"] = cfg.rts == Rts::Vrs ? "vrs" : "crs";
    if (cfg.model == ModelKind::Eimil) j["bigm"] = bigm_json(bigm);
    j["tolerances"] = {{"feasibility", kFeasTol},
                       {"score", kScoreTol},
                       {"target_check", kTargetCheckTol},
                       {"interval_comparison", kTau}};
    if (cfg.with_super) j["ranking_convention"] = kRankingConvention;
    j["warnings"] = ds.warnings;
    return j;
}

std::map<std::string, int> rank_by_name(const RankingReport& ranking) {
    std::map<std::string, int> m;
    for (const auto& e : ranking.entries) m[e.dmu] = e.rank;
    return m;
}

// ---------------------------------------------------------------------------
// Plot data.

std::string plot_csv(const ModelView& view, const std::vector<DeclaredVar>& layout,
                     const Assessment& a, int p) {
    std::string out =
        "variable,role,observed_lo,observed_hi,target_lo,target_hi,ratio_lo,ratio_hi\n";
    for (const auto& dv : layout) {
        Interval obs = dv.input_side ? view.x(dv.model_idx, p) : view.y(dv.model_idx, p);
        Interval tgt = dv.input_side ? a.input_targets[dv.model_idx]
                                     : a.output_targets[dv.model_idx];
        out += csv_quote(dv.name) + ',' + role_name(dv.role) + ',' +
               num_to_string(obs.lo) + ',' + num_to_string(obs.hi) + ',' +
               num_to_string(tgt.lo) + ',' + num_to_string(tgt.hi) + ',' +
               num_to_string(tgt.lo / obs.lo) + ',' + num_to_string(tgt.hi / obs.hi) + '\n';
    }
    return out;
}

std::string plot_filename(const std::string& dmu, std::set<std::string>& used) {
    std::string base;
    for (char c : dmu) {
        bool keep = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') ||
                    (c >= '0' && c <= '9') || c == '.' || c == '_' || c == '-';
        base += keep ? c : '_';
    }
    if (base.empty()) base = "dmu";
    std::string name = base + ".csv";
    int k = 2;
    while (!used.insert(name).second) name = base + "_" + std::to_string(k++) + ".csv";
    return name;
}

int dmu_index(const Dataset& ds, const std::string& name) {
    for (int j = 0; j < ds.n(); ++j)
        if (ds.dmus[j].name == name) return j;
    throw ValidationError("assessment for unknown DMU '" + name + "'");
}

// ---------------------------------------------------------------------------
// Per-model assembly. Each branch fills the table rows, the per-DMU JSON
// records, and (eimil only) the plot payloads.

struct Assembly {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
    ordered_json dmus = ordered_json::array();
    std::vector<std::pair<std::string, std::string>> plot_files;
    std::string lp_dump;
};

std::string yesno(bool b) { return b ? "yes" : "no"; }

Assembly assemble_crisp(const ModelView& view, const RunConfig& cfg) {
    const int N = view.n();
    auto layout = declared_layout(view);
    std::vector<CrispAssessment> scores;
    for (int p = 0; p < N; ++p) scores.push_back(assess_crisp(view, p, cfg.rts));

    std::vector<std::optional<CrispAssessment>> supers(N);
    std::vector<bool> infeasible(N, false);
    std::optional<RankingReport> ranking;
    if (cfg.with_super) {
        std::vector<RankEntry> entries;
        for (int p = 0; p < N; ++p) {
            RankEntry e;
            e.dmu = view.dmu_name(p);
            e.EI = scores[p].score;
            e.efficient = scores[p].score <= kScoreTol;
            if (e.efficient) {
                try {
                    CrispAssessment s = assess_crisp_super(view, p, cfg.rts);
                    e.SEI = s.score;
                    supers[p] = std::move(s);
                } catch (const SuperInfeasible&) {
                    e.super_infeasible = true;
                    infeasible[p] = true;
                }
            }
            entries.push_back(std::move(e));
        }
        ranking = assemble_ranking(std::move(entries));
    }
    std::map<std::string, int> ranks;
    if (ranking) ranks = rank_by_name(*ranking);

    Assembly out;
    out.header = {"DMU", "I", "efficient"};
    if (cfg.with_super) {
        out.header.push_back("SuperI");
        out.header.push_back("rank");
    }
    for (int p = 0; p < N; ++p) {
        const CrispAssessment& a = scores[p];
        bool eff = a.score <= kScoreTol;

        std::vector<std::string> row{a.dmu, fmt3(a.score), yesno(eff)};
        if (cfg.with_super) {
            if (!eff)
                row.push_back("-");
            else if (infeasible[p])
                row.push_back("infeasible");
            else
                row.push_back(fmt3(supers[p]->score));
            row.push_back(std::to_string(ranks.at(a.dmu)));
        }
        out.rows.push_back(std::move(row));

        ordered_json rec;
        rec["name"] = a.dmu;
        rec["I"] = a.score;
        rec["efficient"] = eff;
        rec["lambda"] = a.lambda;
        ordered_json vars = ordered_json::array();
        for (const auto& dv : layout) {
            Interval obs = dv.input_side ? view.x(dv.model_idx, p) : view.y(dv.model_idx, p);
            double slack = dv.input_side ? a.input_slacks[dv.model_idx]
                                         : a.output_slacks[dv.model_idx];
            double target = dv.input_side ? obs.lo - slack : obs.lo + slack;
            ordered_json vj;
            vj["name"] = dv.name;
            vj["role"] = role_name(dv.role);
            vj["observed"] = iv_json(obs);
            vj["slack"] = slack;
            vj["target"] = iv_json({target, target});
            vars.push_back(std::move(vj));
        }
        rec["variables"] = std::move(vars);
        if (cfg.with_super && eff) {
            ordered_json sj;
            if (infeasible[p]) {
                sj["status"] = "infeasible";
            } else {
                sj["status"] = "scored";
                sj["SuperI"] = supers[p]->score;
                sj["lambda"] = supers[p]->lambda;
            }
            rec["super"] = std::move(sj);
        }
        if (cfg.with_super) rec["rank"] = ranks.at(a.dmu);
        out.dmus.push_back(std::move(rec));
    }
    return out;
}

Assembly assemble_idea(const ModelView& view) {
    const int N = view.n();
    auto layout = declared_layout(view);
    std::vector<TwoPhaseResult> results;
    for (int p = 0; p < N; ++p) results.push_back(assess_idea_full(view, p));

    Assembly out;
    out.header = {"DMU", "I", "H", "efficient"};
    for (int p = 0; p < N; ++p) {
        const TwoPhaseResult& r = results[p];
        out.rows.push_back({r.dmu, fmt3(r.I), fmt3(r.H), yesno(r.efficient())});

        ordered_json rec;
        rec["name"] = r.dmu;
        rec["I"] = r.I;
        rec["H"] = r.H;
        rec["efficient"] = r.efficient();
        rec["lambda_phase1"] = r.lambda1;
        rec["lambda_phase2"] = r.lambda2;
        ordered_json vars = ordered_json::array();
        for (const auto& dv : layout) {
            int k = dv.model_idx;
            Interval obs = dv.input_side ? view.x(k, p) : view.y(k, p);
            ordered_json vj;
            vj["name"] = dv.name;
            vj["role"] = role_name(dv.role);
            vj["observed"] = iv_json(obs);
            vj["slack"] = iv_json(dv.input_side ? r.input_slacks[k] : r.output_slacks[k]);
            vj["L"] = dv.input_side ? r.Lx[k] : r.Ly[k];
            vj["R"] = dv.input_side ? r.Rx[k] : r.Ry[k];
            vj["target"] = iv_json(dv.input_side ? r.input_targets[k] : r.output_targets[k]);
            vars.push_back(std::move(vj));
        }
        rec["variables"] = std::move(vars);
        out.dmus.push_back(std::move(rec));
    }
    return out;
}

Assembly assemble_eimil(const ModelView& view, const RunConfig& cfg, const BigMConfig& bigm) {
    const int N = view.n();
    auto layout = declared_layout(view);

    std::ostringstream dump;
    std::vector<Assessment> assessments;
    for (int p = 0; p < N; ++p) {
        if (cfg.dump_lp) {
            dump << "# " << view.dmu_name(p) << "\n";
            dump_problem(build_peimil(view, p, bigm), dump);
            dump << "\n";
        }
        assessments.push_back(assess_eimil(view, p, bigm));
    }

    std::vector<std::optional<SuperAssessment>> supers(N);
    std::optional<RankingReport> ranking;
    if (cfg.with_super) {
        std::vector<RankEntry> entries;
        for (int p = 0; p < N; ++p) {
            const Assessment& a = assessments[p];
            RankEntry e;
            e.dmu = a.dmu;
            e.EI = a.EI;
            e.efficient = a.efficient;
            if (a.efficient) {
                SuperAssessment s = assess_super(view, p, bigm);
                if (s.status == SuperStatus::Scored)
                    e.SEI = s.SEI;
                else
                    e.super_infeasible = true;
                supers[p] = std::move(s);
            }
            entries.push_back(std::move(e));
        }
        ranking = assemble_ranking(std::move(entries));
    }
    std::map<std::string, int> ranks;
    if (ranking) ranks = rank_by_name(*ranking);

    Assembly out;
    out.lp_dump = dump.str();
    out.header = {"DMU", "EI", "efficient"};
    if (cfg.with_super) {
        out.header.push_back("SEI");
        out.header.push_back("rank");
    }
    std::set<std::string> used_names;
    for (int p = 0; p < N; ++p) {
        const Assessment& a = assessments[p];

        std::vector<std::string> row{a.dmu, fmt3(a.EI), yesno(a.efficient)};
        if (cfg.with_super) {
            if (!a.efficient)
                row.push_back("-");
            else if (supers[p]->status == SuperStatus::Infeasible)
                row.push_back("infeasible");
            else
                row.push_back(fmt3(supers[p]->SEI));
            row.push_back(std::to_string(ranks.at(a.dmu)));
        }
        out.rows.push_back(std::move(row));

        ordered_json rec;
        rec["name"] = a.dmu;
        rec["EI"] = a.EI;
        rec["efficient"] = a.efficient;
        rec["lambda"] = a.lambda;
        ordered_json vars = ordered_json::array();
        for (const auto& dv : layout) {
            int k = dv.model_idx;
            const SlackPair& sp = dv.input_side ? a.input_slacks[k] : a.output_slacks[k];
            ordered_json vj;
            vj["name"] = dv.name;
            vj["role"] = role_name(dv.role);
            vj["observed"] = iv_json(dv.input_side ? view.x(k, p) : view.y(k, p));
            vj["sl"] = iv_json(sp.sl);
            vj["su"] = iv_json(sp.su);
            vj["z"] = (dv.input_side ? a.zx[k] : a.zy[k]) ? 1 : 0;
            vj["target"] = iv_json(dv.input_side ? a.input_targets[k] : a.output_targets[k]);
            vars.push_back(std::move(vj));
        }
        rec["variables"] = std::move(vars);
        if (cfg.with_super && a.efficient) {
            const SuperAssessment& s = *supers[p];
            ordered_json sj;
            if (s.status == SuperStatus::Infeasible) {
                sj["status"] = "infeasible";
            } else {
                sj["status"] = "scored";
                sj["SEI"] = s.SEI;
                sj["lambda"] = s.lambda;
            }
            rec["super"] = std::move(sj);
        }
        if (cfg.with_super) rec["rank"] = ranks.at(a.dmu);
        out.dmus.push_back(std::move(rec));

        if (!cfg.plot_dir.empty() && !a.efficient)
            out.plot_files.emplace_back(plot_filename(a.dmu, used_names),
                                        plot_csv(view, layout, a, p));
    }
    return out;
}

} // namespace

std::string model_name(ModelKind k) {
    switch (k) {
    case ModelKind::Crisp: return "crisp";
    case ModelKind::Idea: return "idea";
    case ModelKind::Eimil: return "eimil";
    }
    return "?";
}

RunArtifacts execute(const Dataset& ds, const RunConfig& cfg) {
    if (cfg.with_super && cfg.model == ModelKind::Idea)
        throw ValidationError("--super is available for the crisp and eimil models only");
    if (cfg.rts == Rts::Crs && cfg.model != ModelKind::Crisp)
        throw ValidationError("--rts crs applies to the crisp model only; the interval "
                              "models carry the convexity row by construction");
    if (!cfg.plot_dir.empty() && cfg.model != ModelKind::Eimil)
        throw ValidationError("--plot-data requires --model eimil");
    if (cfg.dump_lp && cfg.model != ModelKind::Eimil)
        throw ValidationError("--dump-lp requires --model eimil");

    BigMConfig bigm = resolve_bigm_mode(cfg);
    ModelView view(ds);

    Assembly a;
    switch (cfg.model) {
    case ModelKind::Crisp: a = assemble_crisp(view, cfg); break;
    case ModelKind::Idea: a = assemble_idea(view); break;
    case ModelKind::Eimil: a = assemble_eimil(view, cfg, bigm); break;
    }

    ordered_json j = metadata_json(cfg, ds, bigm);
    j["dmus"] = std::move(a.dmus);

    RunArtifacts art;
    art.table = render_table(a.header, a.rows);
    art.report = j.dump(2) + "\n";
    art.lp_dump = std::move(a.lp_dump);
    art.plot_files = std::move(a.plot_files);
    return art;
}

int run(const RunConfig& cfg) {
    try {
        Dataset ds = parse_csv(read_file(cfg.data_path), read_file(cfg.schema_path));
        RunArtifacts art = execute(ds, cfg);
        if (!art.lp_dump.empty()) std::cerr << art.lp_dump;
        std::cout << art.table;
        if (cfg.out_path.empty()) {
            std::cout << art.report;
        } else {
            write_file(cfg.out_path, art.report);
        }
        if (!cfg.plot_dir.empty()) {
            std::error_code ec;
            std::filesystem::create_directories(cfg.plot_dir, ec);
            if (ec)
                throw ValidationError("cannot create plot directory '" + cfg.plot_dir + "'");
            for (const auto& [name, text] : art.plot_files)
                write_file(cfg.plot_dir + "/" + name, text);
        }
        return 0;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return e.exit_code();
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
}

std::vector<std::string> emit_plot_data(const std::vector<Assessment>& assessments,
                                        const Dataset& ds, const std::string& dir) {
    ModelView view(ds);
    auto layout = declared_layout(view);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw ValidationError("cannot create plot directory '" + dir + "'");
    std::set<std::string> used_names;
    std::vector<std::string> paths;
    for (const Assessment& a : assessments) {
        int p = dmu_index(ds, a.dmu);
        std::string path = dir + "/" + plot_filename(a.dmu, used_names);
        write_file(path, plot_csv(view, layout, a, p));
        paths.push_back(std::move(path));
    }
    return paths;
}

} // namespace sbidea

#include "sbidea/cli.hpp"

#include "CLI11.hpp"

int main(int argc, char** argv) {
    CLI::App app{"Slacks-based efficiency assessment of DMUs with interval data"};

    sbidea::RunConfig cfg;
    std::string model = "eimil";
    std::string rts = "vrs";

    app.add_option("--data", cfg.data_path, "Data CSV: header `dmu,<columns>`; cells `v` or `lo..hi`")
        ->required();
    app.add_option("--schema", cfg.schema_path,
                   "Schema CSV: `name,role` rows with role input|output|undesirable_output")
        ->required();
    app.add_option("--model", model, "Assessment model")
        ->check(CLI::IsMember({"crisp", "idea", "eimil"}))
        ->capture_default_str();
    app.add_flag("--super", cfg.with_super,
                 "Also score efficient DMUs with the super-efficiency model and rank everyone");
    app.add_option("--bigm", cfg.bigm_mode,
                   "Big-M resolution: per_variable, global, or a JSON file with explicit constants")
        ->capture_default_str();
    app.add_option("--bigm-safety", cfg.bigm_safety, "Safety factor for derived big-M constants")
        ->capture_default_str();
    app.add_option("--rts", rts, "Returns to scale (crisp model only)")
        ->check(CLI::IsMember({"vrs", "crs"}))
        ->capture_default_str();
    app.add_option("--out", cfg.out_path,
                   "Write the structured report here instead of standard output");
    app.add_option("--plot-data", cfg.plot_dir,
                   "Directory for per-DMU observed-vs-target CSVs (inefficient DMUs)");
    app.add_flag("--dump-lp", cfg.dump_lp, "Print each DMU's model to standard error");

    CLI11_PARSE(app, argc, argv);

    if (model == "crisp") cfg.model = sbidea::ModelKind::Crisp;
    else if (model == "idea") cfg.model = sbidea::ModelKind::Idea;
    else cfg.model = sbidea::ModelKind::Eimil;
    cfg.rts = rts == "crs" ? sbidea::Rts::Crs : sbidea::Rts::Vrs;

    return sbidea::run(cfg);
}

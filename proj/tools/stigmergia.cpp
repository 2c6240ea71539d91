// stigmergia: shape features, ant-colony clustering and grid k-NN from the command line.
//
// Exit codes: 0 success, 1 partial or runtime failure, 2 invalid arguments or config.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <vector>

#include <CLI11.hpp>

#include "stigmergia/csv_io.hpp"
#include "stigmergia/errors.hpp"
#include "stigmergia/netpbm.hpp"
#include "stigmergia/pipeline.hpp"
#include "stigmergia/run_config.hpp"

namespace sg = stigmergia;

namespace {

constexpr int kExitPartial = 1;
constexpr int kExitUsage = 2;

// Writes to a file, or stdout for "-" / empty.
void emit(const std::string& path, const std::string& text) {
    if (path.empty() || path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << text;
}

// Options that map onto RunConfig keys. Values given on the command line override the
// config file, which overrides built-in defaults.
struct Overrides {
    std::vector<std::pair<CLI::Option*, std::string>> bound;
    std::map<std::string, std::string> values;

    void add(CLI::App* cmd, const std::string& flag, const std::string& key, const std::string& help) {
        auto* opt = cmd->add_option(flag, values[key], help);
        bound.emplace_back(opt, key);
    }

    void apply(sg::RunConfig& cfg) const {
        for (const auto& [opt, key] : bound)
            if (opt->count() > 0) sg::apply_setting(cfg, key, values.at(key));
    }
};

sg::RunConfig load_run_config(const std::string& config_path) {
    sg::RunConfig cfg;
    std::string path = config_path;
    if (path.empty())
        if (const char* env = std::getenv("STIGMERGIA_CONFIG")) path = env;
    if (!path.empty()) sg::load_config(cfg, path);
    return cfg;
}

void add_swarm_overrides(CLI::App* cmd, Overrides& ov) {
    ov.add(cmd, "--seed", "seed", "RNG seed (u64)");
    ov.add(cmd, "--snapshot-every", "snapshot_every", "snapshot interval in steps (0 = initial and final only)");
    ov.add(cmd, "--k1", "k1", "drop-threshold constant");
    ov.add(cmd, "--k2", "k2", "pick-threshold constant");
    ov.add(cmd, "--evap-k", "evap_k", "per-step pheromone decay rate");
    ov.add(cmd, "--eta", "eta", "constant pheromone deposit");
    ov.add(cmd, "--deposit-a", "deposit_a", "deposit scale: eta + n/a");
    ov.add(cmd, "--beta", "beta", "osmotropotaxic sensitivity");
    ov.add(cmd, "--sensory-delta", "sensory_delta", "inverse sensory capacity");
    ov.add(cmd, "--crowd-theta", "crowd_theta", "crowding threshold");
    ov.add(cmd, "--steepness", "steepness", "response-threshold exponent");
    ov.add(cmd, "--turn-kernel", "turn_kernel", "five comma-separated turn weights");
    ov.add(cmd, "--t-max", "t_max", "number of steps");
    ov.add(cmd, "--ants", "n_ants", "number of ants");
    ov.add(cmd, "--rows", "grid_rows", "grid rows");
    ov.add(cmd, "--cols", "grid_cols", "grid columns");
    ov.add(cmd, "--block-size", "block_size", "entropy block size");
    ov.add(cmd, "--highlight", "highlight_label", "label drawn at 255 in grid snapshots");
}

sg::Polarity parse_polarity(const std::string& s) {
    if (s == "dark") return sg::Polarity::dark;
    if (s == "light") return sg::Polarity::light;
    if (s == "auto") return sg::Polarity::automatic;
    throw sg::InvalidParams("polarity must be dark, light or auto");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Invariant-moment shape features, stigmergic ant clustering and toroidal k-NN"};
    app.require_subcommand(1);
    std::function<int()> action;

    // extract ---------------------------------------------------------------
    auto* extract = app.add_subcommand("extract", "segment greyscale images and compute Hu invariants");
    std::vector<std::string> images;
    std::string extract_out = "-", polarity = "auto", extract_label, log_base = "e", mask_dir;
    bool use_log = false, log_unsigned = false;
    int jobs = 1;
    extract->add_option("images", images, "PGM/PPM images")->required();
    extract->add_option("--out", extract_out, "features CSV (default stdout)");
    extract->add_option("--polarity", polarity, "object intensity: dark, light or auto");
    extract->add_flag("--log", use_log, "apply sign(x)*log(|x|+eps) to each invariant");
    extract->add_option("--log-base", log_base, "e or 10");
    extract->add_flag("--log-unsigned", log_unsigned, "use log(|x|+eps) without the sign");
    extract->add_option("--label", extract_label, "label written on every row");
    extract->add_option("--jobs", jobs, "parallel workers");
    extract->add_option("--mask-dir", mask_dir, "write each segmented mask as PGM here");
    extract->callback([&] {
        action = [&]() -> int {
            sg::pipeline::ExtractOptions opt;
            opt.polarity = parse_polarity(polarity);
            if (use_log) {
                sg::LogTransform t;
                if (log_base == "10") t.base = sg::LogTransform::Base::ten;
                else if (log_base != "e") throw sg::InvalidParams("--log-base must be e or 10");
                t.keep_sign = !log_unsigned;
                opt.log = t;
            }
            opt.jobs = jobs;
            std::vector<std::filesystem::path> paths(images.begin(), images.end());
            const auto results = sg::pipeline::extract(paths, opt);
            if (!mask_dir.empty()) {
                std::filesystem::create_directories(mask_dir);
                for (const auto& r : results) {
                    if (!r.features) continue;
                    const auto mask = sg::segment(sg::netpbm::read_grey(r.source), opt.polarity);
                    sg::netpbm::write_mask(std::filesystem::path(mask_dir) /
                                               (std::filesystem::path(r.source).stem().string() + "_mask.pgm"),
                                           mask);
                }
            }
            std::ostringstream text;
            sg::pipeline::write_extract_csv(text, results, extract_label);
            emit(extract_out, text.str());
            int status = 0;
            for (const auto& r : results) {
                if (r.features) continue;
                std::cerr << "extract: " << r.source << ": " << r.error << '\n';
                status = kExitPartial;
            }
            return status;
        };
    });

    // table1 ----------------------------------------------------------------
    auto* table1 = app.add_subcommand("table1", "emit the embedded 20-sample larvae feature table");
    bool triplicate = false, normalize = false;
    std::string table1_out = "-";
    table1->add_flag("--triplicate", triplicate, "emit 60 rows: ids 21-40 and 41-60 copy 1-20");
    table1->add_flag("--normalize", normalize, "min-max normalize each column over the emitted rows");
    table1->add_option("--out", table1_out, "features CSV (default stdout)");
    table1->callback([&] {
        action = [&]() -> int {
            auto t = sg::table1();
            if (triplicate) t = sg::replicate(t, 2);
            if (normalize) sg::normalize_columns(t);
            std::ostringstream text;
            sg::csv::write_features(text, t);
            emit(table1_out, text.str());
            return 0;
        };
    });

    // cluster ---------------------------------------------------------------
    auto* cluster = app.add_subcommand("cluster", "self-organize feature vectors on a toroidal grid");
    std::string features_path, cluster_config, cluster_out = "-", manifest_path, snapshot_dir, replay;
    Overrides cluster_ov;
    cluster->add_option("features", features_path, "features CSV");
    cluster->add_option("--config", cluster_config, "key=value config file (default $STIGMERGIA_CONFIG)");
    cluster->add_option("--out", cluster_out, "final placement CSV (default stdout)");
    cluster->add_option("--manifest", manifest_path, "run manifest JSON");
    cluster->add_option("--snapshot-dir", snapshot_dir, "write per-snapshot placement CSV and grid PGM");
    cluster->add_option("--replay", replay, "re-run exactly the run recorded in a manifest");
    add_swarm_overrides(cluster, cluster_ov);
    cluster->callback([&] {
        action = [&]() -> int {
            sg::RunConfig cfg;
            std::string items = features_path;
            if (!replay.empty()) {
                std::ifstream in(replay);
                if (!in) throw sg::InvalidParams("cannot open manifest " + replay);
                std::stringstream buf;
                buf << in.rdbuf();
                const auto m = sg::manifest_from_json(buf.str());
                cfg = m.config;
                if (items.empty()) items = m.items_path;
                if (sg::sha256_file(items) != m.items_sha256)
                    throw sg::InvalidParams("items file " + items + " does not match the manifest hash");
            } else {
                cfg = load_run_config(cluster_config);
                cluster_ov.apply(cfg);
            }
            if (items.empty()) throw sg::InvalidParams("cluster: a features CSV is required");
            const auto art = sg::pipeline::cluster_file(items, cfg, snapshot_dir);
            if (art.manifest.item_count == 0) std::cerr << "cluster: warning: no items in " << items << '\n';
            emit(cluster_out, art.placement_csv);
            if (!manifest_path.empty()) emit(manifest_path, art.manifest_json);
            return 0;
        };
    });

    // classify --------------------------------------------------------------
    auto* classify = app.add_subcommand("classify", "k-NN labels from final grid positions");
    std::string placement_path, classify_config, classify_out = "-", markers, classify_manifest;
    Overrides classify_ov;
    classify->add_option("placement", placement_path, "placement CSV (id,row,col,label)")->required();
    classify->add_option("--config", classify_config, "key=value config file (default $STIGMERGIA_CONFIG)");
    classify->add_option("--manifest", classify_manifest, "take grid dimensions from a run manifest");
    classify->add_option("--markers", markers, "marker id range, e.g. 1-20");
    classify->add_option("--out", classify_out, "predictions CSV (default stdout)");
    classify_ov.add(classify, "-k,--k", "k", "neighbours (odd)");
    classify_ov.add(classify, "--rows", "grid_rows", "grid rows");
    classify_ov.add(classify, "--cols", "grid_cols", "grid columns");
    classify_ov.add(classify, "--seed", "seed", "unused; accepted for symmetry");
    classify->callback([&] {
        action = [&]() -> int {
            sg::RunConfig cfg = load_run_config(classify_config);
            if (!classify_manifest.empty()) {
                std::ifstream in(classify_manifest);
                if (!in) throw sg::InvalidParams("cannot open manifest " + classify_manifest);
                std::stringstream buf;
                buf << in.rdbuf();
                const auto m = sg::manifest_from_json(buf.str());
                cfg.params.grid_rows = m.config.params.grid_rows;
                cfg.params.grid_cols = m.config.params.grid_cols;
            }
            classify_ov.apply(cfg);
            if (!markers.empty()) {
                const auto dash = markers.find('-');
                if (dash == std::string::npos) throw sg::InvalidParams("--markers expects FIRST-LAST");
                sg::apply_setting(cfg, "marker_first", markers.substr(0, dash));
                sg::apply_setting(cfg, "marker_last", markers.substr(dash + 1));
            }
            std::ifstream in(placement_path);
            if (!in) throw sg::ParseError("cannot open " + placement_path);
            const auto placement = sg::csv::read_placement(in, cfg.params.grid_rows, cfg.params.grid_cols);
            const auto res = sg::pipeline::classify(placement, cfg.marker_first, cfg.marker_last, cfg.k);
            std::ostringstream text;
            sg::csv::write_predictions(text, res.rows);
            emit(classify_out, text.str());
            std::cerr << "accuracy " << sg::csv::format_real(res.accuracy) << " (" << res.correct << '/'
                      << res.rows.size() << " correct, " << res.rows.size() - res.correct << " errors)\n";
            return 0;
        };
    });

    // synth -----------------------------------------------------------------
    auto* synth = app.add_subcommand("synth", "generate a labelled synthetic feature set");
    sg::SynthOptions synth_opt;
    std::string synth_out = "-";
    synth->add_option("--classes", synth_opt.classes, "number of classes (>= 2)");
    synth->add_option("--per-class", synth_opt.items_per_class, "items per class");
    synth->add_option("--features", synth_opt.features, "features per item");
    synth->add_option("--separation", synth_opt.separation, "distance of class centres from 0.5, doubled");
    synth->add_option("--jitter", synth_opt.jitter, "per-coordinate uniform jitter radius");
    synth->add_option("--seed", synth_opt.seed, "RNG seed (u64)");
    synth->add_option("--out", synth_out, "features CSV (default stdout)");
    synth->callback([&] {
        action = [&]() -> int {
            std::ostringstream text;
            try {
                sg::csv::write_features(text, sg::synthesize(synth_opt));
            } catch (const std::invalid_argument& e) {
                throw sg::InvalidParams(e.what());
            }
            emit(synth_out, text.str());
            return 0;
        };
    });

    // scatter ---------------------------------------------------------------
    auto* scatter = app.add_subcommand("scatter", "two feature columns as id,x,y,label for plotting");
    std::string scatter_in, scatter_out = "-", col_x = "h1", col_y = "h4";
    scatter->add_option("features", scatter_in, "features CSV")->required();
    scatter->add_option("--x", col_x, "x column (default h1)");
    scatter->add_option("--y", col_y, "y column (default h4)");
    scatter->add_option("--out", scatter_out, "scatter CSV (default stdout)");
    scatter->callback([&] {
        action = [&]() -> int {
            std::ostringstream text;
            sg::csv::write_scatter(text, sg::csv::read_features(scatter_in), col_x, col_y);
            emit(scatter_out, text.str());
            return 0;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        return action ? action() : kExitUsage;
    } catch (const sg::InvalidParams& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const sg::EvenK& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const sg::NotEnoughMarkers& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const sg::CapacityExceeded& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const sg::UnknownColumn& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitPartial;
    }
}

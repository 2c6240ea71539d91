#include "stigmergia/pipeline.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "stigmergia/errors.hpp"
#include "stigmergia/netpbm.hpp"

namespace stigmergia::pipeline {

HuVector extract_one(const GreyImage& img, const ExtractOptions& opt) {
    const HuVector h = hu_moments(segment(img, opt.polarity));
    return opt.log ? log_normalize(h, *opt.log) : h;
}

std::vector<ExtractResult> extract(const std::vector<std::filesystem::path>& paths, const ExtractOptions& opt) {
    std::vector<ExtractResult> results(paths.size());
    const auto n = static_cast<std::ptrdiff_t>(paths.size());
#pragma omp parallel for schedule(dynamic) num_threads(opt.jobs > 0 ? opt.jobs : 1)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        auto& r = results[i];
        r.id = static_cast<std::uint64_t>(i) + 1;
        r.source = paths[i].string();
        try {
            r.features = extract_one(netpbm::read_grey(paths[i]), opt);
        } catch (const std::exception& e) {
            r.error = e.what();
        }
    }
    return results;
}

void write_extract_csv(std::ostream& out, const std::vector<ExtractResult>& results, const std::string& label) {
    out << "id,h1,h2,h3,h4,h5,h6,h7,label\n";
    for (const auto& r : results) {
        out << r.id;
        for (int i = 0; i < 7; ++i) out << ',' << (r.features ? csv::format_real((*r.features)[i]) : "nan");
        out << ',' << (r.features ? label : "error") << '\n';
    }
}

knn::Placement to_placement(const FeatureTable& items, const swarm::Snapshot& s, std::size_t rows, std::size_t cols) {
    knn::Placement p;
    p.grid_rows = rows;
    p.grid_cols = cols;
    for (std::size_t i = 0; i < items.size(); ++i) {
        knn::PlacementEntry e{items.ids[i], s.item_positions[i].row, s.item_positions[i].col, std::nullopt};
        if (!items.labels[i].empty()) e.label = items.labels[i];
        p.entries.push_back(std::move(e));
    }
    return p;
}

ClusterResult cluster(const FeatureTable& items, const RunConfig& cfg) {
    ClusterResult res;
    res.snapshots = swarm::run(items.rows, cfg.params, cfg.snapshot_every);
    for (const auto& s : res.snapshots)
        res.entropies.push_back(items.size() == 0 ? 0.0
                                                  : swarm::spatial_entropy(s.item_positions, cfg.params.grid_rows,
                                                                           cfg.params.grid_cols, cfg.block_size));
    res.final_placement = to_placement(items, res.snapshots.back(), cfg.params.grid_rows, cfg.params.grid_cols);
    return res;
}

GreyImage grid_image(const knn::Placement& p, const std::map<std::string, int>& class_values) {
    GreyImage img(p.grid_rows, p.grid_cols, 0);
    for (const auto& e : p.entries) {
        int v = 128;
        if (e.label)
            if (const auto it = class_values.find(*e.label); it != class_values.end()) v = it->second;
        img(e.row, e.col) = static_cast<std::uint8_t>(v);
    }
    return img;
}

namespace {

void write_text(const std::filesystem::path& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << text;
}

}  // namespace

ClusterArtifacts cluster_file(const std::filesystem::path& features_csv, const RunConfig& cfg,
                              const std::filesystem::path& snapshot_dir) {
    const FeatureTable items = csv::read_features(features_csv);
    RunManifest m;
    m.config = cfg;
    m.items_path = features_csv.string();
    m.items_sha256 = sha256_file(features_csv);
    m.item_count = items.size();
    for (const auto& label : items.labels)
        if (!label.empty()) m.class_values.emplace(label, label == cfg.highlight_label ? 255 : 128);

    const ClusterResult res = cluster(items, cfg);

    if (!snapshot_dir.empty()) std::filesystem::create_directories(snapshot_dir);
    for (std::size_t i = 0; i < res.snapshots.size(); ++i) {
        SnapshotRecord rec{res.snapshots[i].step, res.entropies[i], {}, {}};
        if (!snapshot_dir.empty()) {
            const auto placement = to_placement(items, res.snapshots[i], cfg.params.grid_rows, cfg.params.grid_cols);
            const std::string stem = "snapshot_" + std::to_string(res.snapshots[i].step);
            std::ostringstream csv_text;
            csv::write_placement(csv_text, placement);
            write_text(snapshot_dir / (stem + ".csv"), csv_text.str());
            netpbm::write_pgm(snapshot_dir / (stem + ".pgm"), grid_image(placement, m.class_values));
            rec.placement_file = stem + ".csv";
            rec.image_file = stem + ".pgm";
        }
        m.snapshots.push_back(std::move(rec));
    }

    std::ostringstream final_csv;
    csv::write_placement(final_csv, res.final_placement);
    ClusterArtifacts art{std::move(m), final_csv.str(), {}};
    art.manifest_json = to_json(art.manifest);
    return art;
}

ClassifyResult classify(const knn::Placement& labelled, std::uint64_t marker_first, std::uint64_t marker_last,
                        std::size_t k) {
    knn::Placement query = labelled;
    std::vector<knn::Prediction> truth;
    for (auto& e : query.entries) {
        if (e.id >= marker_first && e.id <= marker_last) {
            if (!e.label) throw NotEnoughMarkers("marker " + std::to_string(e.id) + " has no label");
            continue;
        }
        truth.push_back({e.id, e.label.value_or("")});
        e.label.reset();
    }
    const auto predicted = knn::knn_classify(query, k);
    ClassifyResult res;
    for (std::size_t i = 0; i < predicted.size(); ++i) {
        res.rows.push_back({predicted[i].id, predicted[i].label, truth[i].label});
        res.correct += predicted[i].label == truth[i].label;
    }
    res.accuracy = predicted.empty() ? 0.0 : knn::accuracy(predicted, truth);
    return res;
}

}  // namespace stigmergia::pipeline

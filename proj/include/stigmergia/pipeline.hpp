#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "stigmergia/csv_io.hpp"
#include "stigmergia/datasets.hpp"
#include "stigmergia/grid_knn.hpp"
#include "stigmergia/manifest.hpp"
#include "stigmergia/segmentation.hpp"
#include "stigmergia/swarm.hpp"

namespace stigmergia::pipeline {

// ---- extract ---------------------------------------------------------------

struct ExtractOptions {
    Polarity polarity = Polarity::automatic;
    std::optional<LogTransform> log;  // unset: raw Hu invariants
    std::string label;
    int jobs = 1;
};

struct ExtractResult {
    std::uint64_t id = 0;
    std::string source;
    std::optional<HuVector> features;
    std::string error;
};

// One result per path, in input order; ids are 1-based positions.
std::vector<ExtractResult> extract(const std::vector<std::filesystem::path>& paths, const ExtractOptions& opt);
HuVector extract_one(const GreyImage& img, const ExtractOptions& opt);
// Failed rows carry `nan` features and the label `error`.
void write_extract_csv(std::ostream& out, const std::vector<ExtractResult>& results, const std::string& label);

// ---- cluster ---------------------------------------------------------------

struct ClusterResult {
    std::vector<swarm::Snapshot> snapshots;
    std::vector<double> entropies;  // per snapshot
    knn::Placement final_placement;  // every item labelled with its table label
};

// Items need not be normalized here; callers normalize first when they want [0,1] data.
ClusterResult cluster(const FeatureTable& items, const RunConfig& cfg);
knn::Placement to_placement(const FeatureTable& items, const swarm::Snapshot& s, std::size_t rows, std::size_t cols);

// Cell grey levels: 0 empty, 128 item, 255 item whose label is highlighted.
GreyImage grid_image(const knn::Placement& p, const std::map<std::string, int>& class_values);

struct ClusterArtifacts {
    RunManifest manifest;
    std::string placement_csv;  // final placement
    std::string manifest_json;
};

// Clusters the items of a features file. When snapshot_dir is non-empty every snapshot is
// also written there as `snapshot_<step>.csv` and `snapshot_<step>.pgm`.
ClusterArtifacts cluster_file(const std::filesystem::path& features_csv, const RunConfig& cfg,
                              const std::filesystem::path& snapshot_dir = {});

// ---- classify --------------------------------------------------------------

struct ClassifyResult {
    std::vector<csv::PredictionRow> rows;
    double accuracy = 0.0;
    std::size_t correct = 0;
};

// Entries with ids in [marker_first, marker_last] keep their labels as markers; all
// others are classified and scored against their own labels.
ClassifyResult classify(const knn::Placement& labelled, std::uint64_t marker_first, std::uint64_t marker_last,
                        std::size_t k);

}  // namespace stigmergia::pipeline

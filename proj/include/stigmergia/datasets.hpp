#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stigmergia/shape_features.hpp"

namespace stigmergia {

// Labelled feature rows as read from or written to a features CSV.
struct FeatureTable {
    std::vector<std::string> feature_names;  // h1..hF
    std::vector<std::uint64_t> ids;
    std::vector<FeatureVector> rows;
    std::vector<std::string> labels;  // empty string = unlabelled

    std::size_t size() const { return ids.size(); }
    std::size_t dims() const { return feature_names.size(); }
    void add(std::uint64_t id, FeatureVector f, std::string label = {});
};

inline const std::string kScallop = "scallop";
inline const std::string kNonScallop = "non-scallop";

// The 20-sample larvae dataset (log-normalized Hu moments); ids 7, 12, 14, 16, 18 are scallops.
FeatureTable table1();

// Appends `copies` extra copies, so row id + 20 * j repeats row id.
FeatureTable replicate(const FeatureTable& base, std::size_t copies);

// Min-max normalizes every feature column in place.
void normalize_columns(FeatureTable& t);

struct SynthOptions {
    std::size_t classes = 4;
    std::size_t items_per_class = 200;
    std::size_t features = 7;
    double separation = 0.8;  // centre coordinates are 0.5 +/- separation / 2
    double jitter = 0.05;     // per-coordinate uniform offset in [-jitter, jitter]
    std::uint64_t seed = 1;
};

// Class centres sit on hypercube corners from a simplex-style binary code, so distinct
// classes differ in about half of the coordinates. Labels are "class1".."classC", ids
// run 1..N grouped by class. Throws std::invalid_argument for classes < 2 or when the
// code cannot give every class its own corner.
FeatureTable synthesize(const SynthOptions& opt);

}  // namespace stigmergia

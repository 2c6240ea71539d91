#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace stigmergia::knn {

struct PlacementEntry {
    std::uint64_t id = 0;
    std::size_t row = 0;
    std::size_t col = 0;
    std::optional<std::string> label;  // present for markers
    friend bool operator==(const PlacementEntry&, const PlacementEntry&) = default;
};

struct Placement {
    std::vector<PlacementEntry> entries;
    std::size_t grid_rows = 0;
    std::size_t grid_cols = 0;
};

struct Prediction {
    std::uint64_t id = 0;
    std::string label;
    friend bool operator==(const Prediction&, const Prediction&) = default;
};

// Squared Euclidean distance with wrap-around on both axes.
std::size_t toroidal_distance_sq(std::size_t ra, std::size_t ca, std::size_t rb, std::size_t cb,
                                 std::size_t rows, std::size_t cols);
double toroidal_distance(std::size_t ra, std::size_t ca, std::size_t rb, std::size_t cb, std::size_t rows,
                         std::size_t cols);

// Majority label among the k nearest labelled entries for each unlabelled entry, in the
// order unlabelled entries appear. Distance ties go to the smaller marker id; label ties
// (only possible with three or more classes) to the label of the smallest-id voter.
// Throws EvenK, NotEnoughMarkers, std::invalid_argument (duplicate ids, off-grid entries).
std::vector<Prediction> knn_classify(const Placement& p, std::size_t k);
std::vector<Prediction> knn_classify_serial(const Placement& p, std::size_t k);

// Fraction of predictions whose label matches truth. Throws IdMismatch unless both lists
// cover the same id set.
double accuracy(std::span<const Prediction> predicted, std::span<const Prediction> truth);

}  // namespace stigmergia::knn

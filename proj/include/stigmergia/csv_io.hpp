#pragma once

#include <filesystem>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "stigmergia/datasets.hpp"
#include "stigmergia/grid_knn.hpp"

namespace stigmergia::csv {

// Shortest decimal form that parses back to the same double.
std::string format_real(double v);

std::vector<std::string> split_line(const std::string& line);

// Header `id,<feature...>,label`; the label column may be absent on input.
// Throws ParseError with the offending line number.
FeatureTable read_features(std::istream& in);
FeatureTable read_features(const std::filesystem::path& path);
void write_features(std::ostream& out, const FeatureTable& t);

// `id,row,col,label`
knn::Placement read_placement(std::istream& in, std::size_t grid_rows, std::size_t grid_cols);
void write_placement(std::ostream& out, const knn::Placement& p);

struct PredictionRow {
    std::uint64_t id;
    std::string predicted;
    std::string truth;
};
// `id,predicted,truth,correct`
void write_predictions(std::ostream& out, std::span<const PredictionRow> rows);

// `id,x,y,label` from two named feature columns. Throws UnknownColumn.
void write_scatter(std::ostream& out, const FeatureTable& t, const std::string& x, const std::string& y);

}  // namespace stigmergia::csv

#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "stigmergia/run_config.hpp"

namespace stigmergia {

struct SnapshotRecord {
    std::uint64_t step = 0;
    double entropy = 0.0;  // NaN-free; zero-item runs record 0
    std::string placement_file;  // empty when not written
    std::string image_file;
};

struct RunManifest {
    RunConfig config;
    std::string items_path;
    std::string items_sha256;
    std::size_t item_count = 0;
    std::vector<SnapshotRecord> snapshots;
    std::map<std::string, int> class_values;  // grid snapshot grey level per label
};

std::string sha256_file(const std::filesystem::path& path);

// lower_snake_case JSON; field order is fixed so equal manifests serialize identically.
std::string to_json(const RunManifest& m);
// Throws ParseError.
RunManifest manifest_from_json(const std::string& text);

}  // namespace stigmergia

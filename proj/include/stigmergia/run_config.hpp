#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "stigmergia/swarm.hpp"

namespace stigmergia {

struct RunConfig {
    swarm::Params params;
    std::size_t k = 3;
    std::uint64_t marker_first = 1;
    std::uint64_t marker_last = 20;
    std::uint64_t snapshot_every = 0;
    std::size_t block_size = 3;
    std::string highlight_label = "scallop";
};

// Sets one field by its lower_snake_case key. Throws InvalidParams for unknown keys or
// unparsable values.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

// Flat `key = value` lines; '#' starts a comment; blank lines ignored.
void load_config(RunConfig& cfg, std::istream& in);
void load_config(RunConfig& cfg, const std::filesystem::path& path);

}  // namespace stigmergia

#include "stigmergia/manifest.hpp"

#include <array>
#include <fstream>

#include <json.hpp>
#include <openssl/evp.h>

#include "stigmergia/errors.hpp"

namespace stigmergia {

using json = nlohmann::ordered_json;

std::string sha256_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    EVP_MD_CTX* ctx = EVP_MD_CTX_new();
    EVP_DigestInit_ex(ctx, EVP_sha256(), nullptr);
    std::array<char, 1 << 16> buf;
    while (in) {
        in.read(buf.data(), buf.size());
        EVP_DigestUpdate(ctx, buf.data(), static_cast<std::size_t>(in.gcount()));
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    EVP_DigestFinal_ex(ctx, digest, &len);
    EVP_MD_CTX_free(ctx);
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 15]);
    }
    return out;
}

std::string to_json(const RunManifest& m) {
    const auto& p = m.config.params;
    json params = {
        {"k1", p.k1},
        {"k2", p.k2},
        {"evap_k", p.evap_K},
        {"eta", p.eta},
        {"deposit_a", p.deposit_a},
        {"beta", p.beta},
        {"sensory_delta", p.sensory_delta},
        {"crowd_theta", p.crowd_theta},
        {"steepness", p.steepness},
        {"t_max", p.t_max},
        {"n_ants", p.n_ants},
        {"grid_rows", p.grid_rows},
        {"grid_cols", p.grid_cols},
        {"turn_kernel", p.turn_kernel},
    };
    json snaps = json::array();
    for (const auto& s : m.snapshots)
        snaps.push_back({{"step", s.step},
                         {"entropy", s.entropy},
                         {"placement_file", s.placement_file},
                         {"image_file", s.image_file}});
    json classes = json::object();
    for (const auto& [label, value] : m.class_values) classes[label] = value;
    json doc = {
        {"format_version", 1},
        {"seed", p.seed},
        {"params", params},
        {"snapshot_every", m.config.snapshot_every},
        {"block_size", m.config.block_size},
        {"items_path", m.items_path},
        {"items_sha256", m.items_sha256},
        {"item_count", m.item_count},
        {"class_values", classes},
        {"snapshots", snaps},
    };
    return doc.dump(2) + "\n";
}

RunManifest manifest_from_json(const std::string& text) {
    try {
        const json doc = json::parse(text);
        RunManifest m;
        auto& p = m.config.params;
        const json& jp = doc.at("params");
        p.seed = doc.at("seed").get<std::uint64_t>();
        p.k1 = jp.at("k1").get<double>();
        p.k2 = jp.at("k2").get<double>();
        p.evap_K = jp.at("evap_k").get<double>();
        p.eta = jp.at("eta").get<double>();
        p.deposit_a = jp.at("deposit_a").get<double>();
        p.beta = jp.at("beta").get<double>();
        p.sensory_delta = jp.at("sensory_delta").get<double>();
        p.crowd_theta = jp.at("crowd_theta").get<double>();
        p.steepness = jp.at("steepness").get<int>();
        p.t_max = jp.at("t_max").get<std::uint64_t>();
        p.n_ants = jp.at("n_ants").get<std::size_t>();
        p.grid_rows = jp.at("grid_rows").get<std::size_t>();
        p.grid_cols = jp.at("grid_cols").get<std::size_t>();
        p.turn_kernel = jp.at("turn_kernel").get<std::array<double, 5>>();
        m.config.snapshot_every = doc.at("snapshot_every").get<std::uint64_t>();
        m.config.block_size = doc.at("block_size").get<std::size_t>();
        m.items_path = doc.at("items_path").get<std::string>();
        m.items_sha256 = doc.at("items_sha256").get<std::string>();
        m.item_count = doc.at("item_count").get<std::size_t>();
        for (const auto& [label, value] : doc.at("class_values").items()) m.class_values[label] = value.get<int>();
        for (const auto& s : doc.at("snapshots"))
            m.snapshots.push_back({s.at("step").get<std::uint64_t>(), s.at("entropy").get<double>(),
                                   s.at("placement_file").get<std::string>(), s.at("image_file").get<std::string>()});
        return m;
    } catch (const json::exception& e) {
        throw ParseError(std::string("manifest: ") + e.what());
    }
}

}  // namespace stigmergia

#include "stigmergia/run_config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <istream>
#include <map>
#include <sstream>

#include "stigmergia/errors.hpp"

namespace stigmergia {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

template <typename T>
T parse(const std::string& key, const std::string& v) {
    T out{};
    const auto res = std::from_chars(v.data(), v.data() + v.size(), out);
    if (res.ec != std::errc{} || res.ptr != v.data() + v.size())
        throw InvalidParams("config: bad value '" + v + "' for " + key);
    return out;
}

std::array<double, 5> parse_kernel(const std::string& key, const std::string& v) {
    std::array<double, 5> out{};
    std::stringstream ss(v);
    std::string part;
    std::size_t i = 0;
    while (std::getline(ss, part, ',')) {
        if (i == out.size()) throw InvalidParams("config: " + key + " takes 5 values");
        out[i++] = parse<double>(key, trim(part));
    }
    if (i != out.size()) throw InvalidParams("config: " + key + " takes 5 values");
    return out;
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

template <typename T>
Setter field(T swarm::Params::*member) {
    return [member](RunConfig& c, const std::string& k, const std::string& v) { c.params.*member = parse<T>(k, v); };
}

template <typename T>
Setter run_field(T RunConfig::*member) {
    return [member](RunConfig& c, const std::string& k, const std::string& v) { c.*member = parse<T>(k, v); };
}

const std::map<std::string, Setter>& setters() {
    static const std::map<std::string, Setter> table{
        {"k1", field(&swarm::Params::k1)},
        {"k2", field(&swarm::Params::k2)},
        {"evap_k", field(&swarm::Params::evap_K)},
        {"eta", field(&swarm::Params::eta)},
        {"deposit_a", field(&swarm::Params::deposit_a)},
        {"beta", field(&swarm::Params::beta)},
        {"sensory_delta", field(&swarm::Params::sensory_delta)},
        {"crowd_theta", field(&swarm::Params::crowd_theta)},
        {"steepness", field(&swarm::Params::steepness)},
        {"t_max", field(&swarm::Params::t_max)},
        {"n_ants", field(&swarm::Params::n_ants)},
        {"grid_rows", field(&swarm::Params::grid_rows)},
        {"grid_cols", field(&swarm::Params::grid_cols)},
        {"seed", field(&swarm::Params::seed)},
        {"turn_kernel",
         [](RunConfig& c, const std::string& k, const std::string& v) { c.params.turn_kernel = parse_kernel(k, v); }},
        {"k", run_field(&RunConfig::k)},
        {"marker_first", run_field(&RunConfig::marker_first)},
        {"marker_last", run_field(&RunConfig::marker_last)},
        {"snapshot_every", run_field(&RunConfig::snapshot_every)},
        {"block_size", run_field(&RunConfig::block_size)},
        {"highlight_label", [](RunConfig& c, const std::string&, const std::string& v) { c.highlight_label = v; }},
    };
    return table;
}

}  // namespace

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value) {
    const auto it = setters().find(key);
    if (it == setters().end()) throw InvalidParams("config: unknown key '" + key + "'");
    it->second(cfg, key, value);
}

void load_config(RunConfig& cfg, std::istream& in) {
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InvalidParams("config line " + std::to_string(line_no) + ": expected key=value");
        apply_setting(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
}

void load_config(RunConfig& cfg, const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InvalidParams("cannot open config " + path.string());
    load_config(cfg, in);
}

}  // namespace stigmergia

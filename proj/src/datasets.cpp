#include "stigmergia/datasets.hpp"

#include <algorithm>
#include <bit>
#include <set>
#include <stdexcept>

#include "stigmergia/rng.hpp"

namespace stigmergia {

void FeatureTable::add(std::uint64_t id, FeatureVector f, std::string label) {
    ids.push_back(id);
    rows.push_back(std::move(f));
    labels.push_back(std::move(label));
}

namespace {

std::vector<std::string> h_names(std::size_t n) {
    std::vector<std::string> names;
    for (std::size_t i = 1; i <= n; ++i) names.push_back("h" + std::to_string(i));
    return names;
}

struct Table1Row {
    int id;
    double h[7];
    bool scallop;
};

// clang-format off
constexpr Table1Row kTable1[20] = {
    { 1, {-8.6940,  -7.9026, -12.2217, -4.9005,  0.1141, -0.198,   0.0804}, false},
    { 2, {-7.9710,  -5.4640, -11.8688, -3.7754, -0.2349, -0.7533, -0.0871}, false},
    { 3, {-8.4007,  -6.8575, -11.5683, -6.0194, -0.0865, -0.3836,  0.0658}, false},
    { 4, {-9.1047, -10.4998, -12.4660, -7.8341, -0.0486, -0.2176,  0.0245}, false},
    { 5, {-9.3712, -13.8080, -12.8727, -9.2301, -0.0002, -0.0028,  0.0000}, false},
    { 6, {-9.0280,  -9.5743, -12.4695, -8.1891,  0.0332, -0.0844,  0.0218}, false},
    { 7, {-8.7786,  -8.2680, -12.0012, -6.3576, -0.0683, -0.1458, -0.0551}, true },
    { 8, {-9.0596, -10.4306, -12.3343, -6.8460, -0.0597, -0.2134,  0.0425}, false},
    { 9, {-9.1003,  -9.2379, -12.8374, -8.7028,  0.0197,  0.1318,  0.0068}, false},
    {10, {-8.8725,  -9.5835, -12.0148, -5.5173, -0.1274, -0.3880,  0.0646}, false},
    {11, {-8.9225,  -8.3671, -12.7163, -8.1694, -0.0385, -0.2324, -0.0121}, false},
    {12, {-8.7167,  -7.6808, -12.1323, -6.4967,  0.1003,  0.3857,  0.0381}, true },
    {13, {-8.4861,  -6.3422, -12.8731, -9.0545, -0.0051, -0.0873,  0.0034}, false},
    {14, {-8.8416,  -8.2991, -12.1866, -6.8248,  0.0825,  0.3249,  0.0398}, true },
    {15, {-8.5474,  -6.4951, -12.8462, -8.8891, -0.0053,  0.0707, -0.0075}, false},
    {16, {-8.8622,  -9.1319, -11.6367, -6.7841,  0.1023,  0.3345,  0.0218}, true },
    {17, {-8.5396,  -7.8825, -11.4335, -3.9287, -0.2168, -0.5815,  0.1113}, false},
    {18, {-8.8719,  -8.6952, -11.9684, -6.5917,  0.1032,  0.3574, -0.0280}, true },
    {19, {-8.2990,  -6.0410, -12.2315, -5.7875,  0.1053,  0.3277,  0.0590}, false},
    {20, {-8.9878,  -8.9661, -12.7607, -8.1713, -0.0348, -0.2139, -0.0149}, false},
};
// clang-format on

}  // namespace

FeatureTable table1() {
    FeatureTable t;
    t.feature_names = h_names(7);
    for (const auto& row : kTable1)
        t.add(static_cast<std::uint64_t>(row.id), FeatureVector{{std::begin(row.h), std::end(row.h)}},
              row.scallop ? kScallop : kNonScallop);
    return t;
}

FeatureTable replicate(const FeatureTable& base, std::size_t copies) {
    FeatureTable out = base;
    const std::uint64_t stride = base.size();
    for (std::size_t j = 1; j <= copies; ++j)
        for (std::size_t i = 0; i < base.size(); ++i) out.add(base.ids[i] + stride * j, base.rows[i], base.labels[i]);
    return out;
}

void normalize_columns(FeatureTable& t) { t.rows = minmax_normalize(t.rows); }

FeatureTable synthesize(const SynthOptions& opt) {
    if (opt.classes < 2) throw std::invalid_argument("synth: need at least 2 classes");
    if (opt.features == 0) throw std::invalid_argument("synth: need at least 1 feature");

    // Codeword bit i of class c is the parity of c & mask_i, with masks cycling over the
    // non-zero m-bit values. For classes <= 2^m and features >= 2^m - 1 the codewords are
    // distinct and pairwise differ in about half the bits.
    const unsigned m = std::max(1u, static_cast<unsigned>(std::bit_width(opt.classes - 1)));
    const std::uint64_t masks = (std::uint64_t{1} << m) - 1;
    std::vector<std::vector<double>> centres(opt.classes, std::vector<double>(opt.features));
    std::set<std::vector<int>> codes;
    for (std::size_t c = 0; c < opt.classes; ++c) {
        std::vector<int> code(opt.features);
        for (std::size_t i = 0; i < opt.features; ++i) {
            const std::uint64_t mask = (i % masks) + 1;
            code[i] = std::popcount(static_cast<std::uint64_t>(c) & mask) & 1;
            centres[c][i] = 0.5 + opt.separation * (code[i] - 0.5);
        }
        codes.insert(code);
    }
    if (codes.size() != opt.classes)
        throw std::invalid_argument("synth: too few features to give every class its own centre");

    Rng rng(opt.seed);
    FeatureTable t;
    t.feature_names = h_names(opt.features);
    std::uint64_t id = 1;
    for (std::size_t c = 0; c < opt.classes; ++c) {
        for (std::size_t k = 0; k < opt.items_per_class; ++k) {
            FeatureVector f;
            f.values.resize(opt.features);
            for (std::size_t i = 0; i < opt.features; ++i) {
                const double v = centres[c][i] + opt.jitter * (2.0 * rng.uniform() - 1.0);
                f.values[i] = std::clamp(v, 0.0, 1.0);
            }
            t.add(id++, std::move(f), "class" + std::to_string(c + 1));
        }
    }
    return t;
}

}  // namespace stigmergia

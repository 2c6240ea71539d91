#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "stigmergia/errors.hpp"
#include "stigmergia/netpbm.hpp"
#include "stigmergia/pipeline.hpp"

using namespace stigmergia;
namespace fs = std::filesystem;

namespace {

std::size_t column(const FeatureTable& t, const std::string& name) {
    return static_cast<std::size_t>(std::find(t.feature_names.begin(), t.feature_names.end(), name) -
                                    t.feature_names.begin());
}

std::size_t row_of(const FeatureTable& t, std::uint64_t id) {
    return static_cast<std::size_t>(std::find(t.ids.begin(), t.ids.end(), id) - t.ids.begin());
}

fs::path scratch_dir(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("stigmergia_test_" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

GreyImage ellipse(std::size_t rows, std::size_t cols, double a, double b) {
    GreyImage img(rows, cols, 230);
    const double cr = rows / 2.0, cc = cols / 2.0;
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c) {
            const double y = (r + 0.5 - cr) / a, x = (c + 0.5 - cc) / b;
            if (x * x + y * y <= 1.0) img(r, c) = 20;
        }
    return img;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    return {std::istreambuf_iterator<char>(in), {}};
}

}  // namespace

TEST_CASE("table 1") {
    const auto t = table1();
    REQUIRE(t.size() == 20);
    REQUIRE(t.dims() == 7);
    CHECK(t.rows[row_of(t, 5)].values[column(t, "h2")] == doctest::Approx(-13.8080).epsilon(1e-9));
    for (std::size_t i = 0; i < t.size(); ++i) {
        const bool scallop = t.ids[i] == 7 || t.ids[i] == 12 || t.ids[i] == 14 || t.ids[i] == 16 || t.ids[i] == 18;
        CHECK(t.labels[i] == (scallop ? kScallop : kNonScallop));
    }
    double lo = 1e9, hi = -1e9;
    for (const auto& r : t.rows) lo = std::min(lo, r.values[0]), hi = std::max(hi, r.values[0]);
    CHECK(lo == -9.3712);
    CHECK(hi == -7.9710);

    SUBCASE("triplication") {
        const auto t3 = replicate(t, 2);
        REQUIRE(t3.size() == 60);
        CHECK(t3.rows[row_of(t3, 34)].values == t3.rows[row_of(t3, 14)].values);
        CHECK(t3.labels[row_of(t3, 34)] == kScallop);
        CHECK(t3.rows[row_of(t3, 22)].values == t3.rows[row_of(t3, 2)].values);
        for (std::uint64_t id : {27u, 32u, 34u, 36u, 38u}) CHECK(t3.labels[row_of(t3, id)] == kScallop);
    }
    SUBCASE("normalization") {
        auto t3 = replicate(t, 2);
        normalize_columns(t3);
        CHECK(t3.rows[row_of(t3, 2)].values[0] == 1.0);
        for (const auto& r : t3.rows)
            for (double v : r.values) CHECK((v >= 0.0 && v <= 1.0));
    }
}

TEST_CASE("synthetic classes") {
    SUBCASE("defaults separate the classes") {
        const auto t = synthesize({});
        REQUIRE(t.size() == 800);
        double intra = 0.0, inter = 1e9;
        for (std::size_t i = 0; i < t.size(); ++i)
            for (std::size_t j = i + 1; j < t.size(); ++j) {
                const double d = swarm::feature_distance(t.rows[i], t.rows[j]);
                if (t.labels[i] == t.labels[j]) intra = std::max(intra, d);
                else inter = std::min(inter, d);
            }
        CHECK(intra < 0.15);
        CHECK(inter > 0.4);
        CHECK(intra < inter);
    }
    SUBCASE("zero separation makes the classes coincide") {
        SynthOptions o;
        o.separation = 0.0;
        o.jitter = 0.0;
        const auto t = synthesize(o);
        for (const auto& r : t.rows) CHECK(r.values == t.rows[0].values);
    }
    SUBCASE("determinism") {
        std::ostringstream a, b, c;
        csv::write_features(a, synthesize({}));
        csv::write_features(b, synthesize({}));
        SynthOptions o;
        o.seed = 2;
        csv::write_features(c, synthesize(o));
        CHECK(a.str() == b.str());
        CHECK(a.str() != c.str());
    }
    SUBCASE("invalid requests") {
        SynthOptions o;
        o.classes = 1;
        CHECK_THROWS_AS(synthesize(o), std::invalid_argument);
    }
}

TEST_CASE("scatter") {
    const auto t = table1();
    std::ostringstream out;
    csv::write_scatter(out, t, "h1", "h4");
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "id,x,y,label");
    std::vector<std::pair<double, double>> s, n;
    while (std::getline(in, line)) {
        const auto f = csv::split_line(line);
        REQUIRE(f.size() == 4);
        (f[3] == kScallop ? s : n).push_back({std::stod(f[1]), std::stod(f[2])});
    }
    REQUIRE(s.size() == 5);
    REQUIRE(n.size() == 15);
    auto dist = [](auto a, auto b) { return std::hypot(a.first - b.first, a.second - b.second); };
    // every scallop is on average nearer the other scallops than the non-scallops
    for (const auto& a : s) {
        double ds = 0.0, dn = 0.0;
        for (const auto& b : s) ds += dist(a, b) / 4.0;
        for (const auto& b : n) dn += dist(a, b) / 15.0;
        CHECK(ds < dn);
    }

    std::ostringstream diag;
    csv::write_scatter(diag, t, "h1", "h1");
    std::istringstream din(diag.str());
    std::getline(din, line);
    while (std::getline(din, line)) {
        const auto f = csv::split_line(line);
        CHECK(f[1] == f[2]);
    }

    std::ostringstream bad;
    CHECK_THROWS_AS(csv::write_scatter(bad, t, "h1", "h9"), UnknownColumn);
    CHECK(bad.str().empty());

    FeatureTable empty;
    empty.feature_names = t.feature_names;
    std::ostringstream eout;
    csv::write_scatter(eout, empty, "h1", "h4");
    CHECK(eout.str() == "id,x,y,label\n");
}

TEST_CASE("csv io") {
    SUBCASE("real formatting round-trips") {
        for (double v : {0.1, -13.808, 1.0 / 3.0, 1e-300, 6.02214076e23, 0.0}) {
            CHECK(std::stod(csv::format_real(v)) == v);
        }
        CHECK(csv::format_real(-13.808) == "-13.808");
    }
    SUBCASE("features round-trip") {
        const auto t = table1();
        std::ostringstream out;
        csv::write_features(out, t);
        std::istringstream in(out.str());
        const auto back = csv::read_features(in);
        CHECK(back.feature_names == t.feature_names);
        CHECK(back.ids == t.ids);
        CHECK(back.labels == t.labels);
        for (std::size_t i = 0; i < t.size(); ++i) CHECK(back.rows[i].values == t.rows[i].values);
    }
    SUBCASE("unlabelled input") {
        std::istringstream in("id,a,b\n1,0.5,0.25\n2,1,0\n");
        const auto t = csv::read_features(in);
        CHECK(t.size() == 2);
        CHECK(t.labels[1].empty());
    }
    SUBCASE("an empty file is an empty table") {
        std::istringstream in("");
        CHECK(csv::read_features(in).size() == 0);
    }
    SUBCASE("header only is an empty table") {
        std::istringstream in("id,h1,h2,label\n");
        CHECK(csv::read_features(in).size() == 0);
    }
    SUBCASE("malformed input") {
        for (const char* text : {"id,a,label\n1,x,y\n", "id,a,label\n1,0.5\n", "id,a,label\n1,nan,q\n",
                                 "id,a,label\n-1,0.5,q\n", "id,a,label\n1,0.5,q\n1,0.5,q\n"}) {
            std::istringstream in(text);
            CHECK_THROWS_AS(csv::read_features(in), ParseError);
        }
    }
    SUBCASE("placement round-trip") {
        knn::Placement p{{{1, 0, 0, "a"}, {2, 14, 3, std::nullopt}, {3, 7, 7, "b"}}, 15, 15};
        std::ostringstream out;
        csv::write_placement(out, p);
        std::istringstream in(out.str());
        const auto back = csv::read_placement(in, 15, 15);
        CHECK(back.entries == p.entries);
        std::istringstream off(out.str());
        CHECK_THROWS_AS(csv::read_placement(off, 10, 10), ParseError);
        p.entries[2].label = "b,c";
        std::ostringstream quoted;
        CHECK_THROWS_AS(csv::write_placement(quoted, p), std::invalid_argument);
    }
    SUBCASE("predictions") {
        std::vector<csv::PredictionRow> rows{{21, "scallop", "scallop"}, {22, "scallop", "non-scallop"}};
        std::ostringstream out;
        csv::write_predictions(out, rows);
        CHECK(out.str() == "id,predicted,truth,correct\n21,scallop,scallop,1\n22,scallop,non-scallop,0\n");
    }
}

TEST_CASE("run config") {
    RunConfig cfg;
    std::istringstream in("# defaults, with a twist\n"
                          "k1 = 0.2\n"
                          "\n"
                          "t_max=5000   # short\n"
                          "grid_rows = 20\n"
                          "turn_kernel = 1, 0.4, 0.2, 0.1, 0.05\n"
                          "highlight_label = class2\n");
    load_config(cfg, in);
    CHECK(cfg.params.k1 == 0.2);
    CHECK(cfg.params.t_max == 5000);
    CHECK(cfg.params.grid_rows == 20);
    CHECK(cfg.params.turn_kernel[1] == 0.4);
    CHECK(cfg.highlight_label == "class2");
    CHECK(cfg.params.k2 == 0.3);
    CHECK_THROWS_AS(apply_setting(cfg, "nonsense", "1"), InvalidParams);
    CHECK_THROWS_AS(apply_setting(cfg, "k1", "abc"), InvalidParams);
    CHECK_THROWS_AS(apply_setting(cfg, "n_ants", "-3"), InvalidParams);
    CHECK_THROWS_AS(apply_setting(cfg, "turn_kernel", "1,2"), InvalidParams);
    std::istringstream bad("k1\n");
    CHECK_THROWS_AS(load_config(cfg, bad), InvalidParams);
}

TEST_CASE("manifest") {
    const auto dir = scratch_dir("manifest");
    const auto items = dir / "items.csv";
    {
        std::ofstream out(items);
        out << "abc";
    }
    CHECK(sha256_file(items) == "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");

    RunManifest m;
    m.config.params.seed = 99;
    m.config.params.turn_kernel = {1, 0.3, 0.2, 0.1, 0.01};
    m.config.snapshot_every = 1000;
    m.items_path = items.string();
    m.items_sha256 = sha256_file(items);
    m.item_count = 3;
    m.snapshots = {{0, 2.5, "snapshot_0.csv", "snapshot_0.pgm"}, {1000, 1.25, {}, {}}};
    m.class_values = {{"a", 128}, {"b", 255}};
    const auto json = to_json(m);
    const auto back = manifest_from_json(json);
    CHECK(to_json(back) == json);
    CHECK(back.config.params.seed == 99);
    CHECK(back.config.params.turn_kernel == m.config.params.turn_kernel);
    CHECK(back.snapshots[1].entropy == 1.25);
    CHECK(json.find("\"format_version\"") < json.find("\"seed\""));
    CHECK_THROWS_AS(manifest_from_json("{not json"), ParseError);
    CHECK_THROWS_AS(manifest_from_json("{}"), ParseError);
    fs::remove_all(dir);
}

TEST_CASE("extract") {
    const auto dir = scratch_dir("extract");
    netpbm::write_pgm(dir / "ellipse.pgm", ellipse(120, 160, 25, 60));
    netpbm::write_pgm(dir / "blank.pgm", GreyImage(50, 50, 200));
    pipeline::ExtractOptions opt;
    const auto res = pipeline::extract({dir / "ellipse.pgm", dir / "blank.pgm", dir / "ellipse.pgm", dir / "missing.pgm"}, opt);
    REQUIRE(res.size() == 4);
    REQUIRE(res[0].features);
    CHECK((*res[0].features)[1] > 0.0);
    CHECK(res[0].features == res[2].features);
    CHECK(res[0].id == 1);
    CHECK(res[2].id == 3);
    CHECK_FALSE(res[1].features);
    CHECK_FALSE(res[1].error.empty());
    CHECK_FALSE(res[3].features);

    // 90 degree rotation barely matters
    const auto rotated = pipeline::extract_one(ellipse(160, 120, 60, 25), opt);
    for (std::size_t i = 0; i < 4; ++i) CHECK(rotated[i] == doctest::Approx((*res[0].features)[i]).epsilon(1e-6));

    opt.log = LogTransform{};
    const auto logged = pipeline::extract(std::vector<fs::path>{dir / "ellipse.pgm"}, opt);
    CHECK((*logged[0].features)[0] == doctest::Approx(std::log(std::abs((*res[0].features)[0]))));

    std::ostringstream out;
    pipeline::write_extract_csv(out, res, "x");
    std::istringstream in(out.str());
    std::string line;
    std::getline(in, line);
    CHECK(line == "id,h1,h2,h3,h4,h5,h6,h7,label");
    std::getline(in, line);
    CHECK(line.substr(line.size() - 2) == ",x");
    std::getline(in, line);
    CHECK(line == "2,nan,nan,nan,nan,nan,nan,nan,error");
    fs::remove_all(dir);
}

TEST_CASE("cluster and classify") {
    auto items = replicate(table1(), 2);
    normalize_columns(items);
    RunConfig cfg;
    cfg.params.t_max = 20000;
    cfg.params.seed = 3;
    cfg.snapshot_every = 5000;

    const auto res = pipeline::cluster(items, cfg);
    CHECK(res.snapshots.size() == 5);
    CHECK(res.entropies.size() == 5);
    CHECK(res.final_placement.entries.size() == 60);

    const auto cls = pipeline::classify(res.final_placement, 1, 20, 3);
    CHECK(cls.rows.size() == 40);
    CHECK(cls.accuracy == doctest::Approx(cls.correct / 40.0));
    CHECK_THROWS_AS(pipeline::classify(res.final_placement, 1, 20, 2), EvenK);
    CHECK_THROWS_AS(pipeline::classify(res.final_placement, 1, 2, 3), NotEnoughMarkers);

    SUBCASE("files, snapshots and replay") {
        const auto dir = scratch_dir("cluster");
        {
            std::ofstream out(dir / "items.csv", std::ios::binary);
            csv::write_features(out, items);
        }
        const auto a = pipeline::cluster_file(dir / "items.csv", cfg, dir / "snaps");
        const auto b = pipeline::cluster_file(dir / "items.csv", cfg);
        CHECK(a.placement_csv == b.placement_csv);
        CHECK(a.manifest.snapshots.size() == 5);
        CHECK(fs::exists(dir / "snaps" / "snapshot_0.csv"));
        CHECK(fs::exists(dir / "snaps" / "snapshot_20000.pgm"));
        CHECK(slurp(dir / "snaps" / "snapshot_20000.csv") == a.placement_csv);
        const auto img = netpbm::read_grey(dir / "snaps" / "snapshot_20000.pgm");
        std::size_t bright = 0, mid = 0;
        for (auto v : img.pixels()) bright += v == 255, mid += v == 128;
        CHECK(bright == 15);
        CHECK(mid == 45);

        const auto replayed = pipeline::cluster_file(dir / "items.csv", manifest_from_json(a.manifest_json).config);
        CHECK(replayed.placement_csv == a.placement_csv);
        fs::remove_all(dir);
    }
    SUBCASE("empty input") {
        const auto dir = scratch_dir("empty");
        {
            std::ofstream out(dir / "items.csv");
            out << "id,h1,label\n";
        }
        const auto art = pipeline::cluster_file(dir / "items.csv", cfg);
        CHECK(art.manifest.item_count == 0);
        CHECK(art.placement_csv == "id,row,col,label\n");
        for (const auto& s : art.manifest.snapshots) CHECK(s.entropy == 0.0);
        fs::remove_all(dir);
    }
}

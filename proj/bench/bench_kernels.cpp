// Serial reference kernels vs their OpenMP counterparts.
//   ./bench_kernels --benchmark_filter=Moment

#include <benchmark/benchmark.h>

#include <cmath>
#include <vector>

#include "stigmergia/grid_knn.hpp"
#include "stigmergia/kernels.hpp"
#include "stigmergia/rng.hpp"

namespace sg = stigmergia;

namespace {

sg::BinaryImage disk_image(std::size_t side) {
    sg::BinaryImage img(side, side);
    const double c = (side - 1) / 2.0, r = side * 0.45;
    for (std::size_t y = 0; y < side; ++y)
        for (std::size_t x = 0; x < side; ++x) img(y, x) = std::hypot(y - c, x - c) <= r;
    return img;
}

std::vector<std::uint8_t> noise(std::size_t n) {
    sg::Rng rng(7);
    std::vector<std::uint8_t> v(n);
    for (auto& x : v) x = static_cast<std::uint8_t>(rng.below(256));
    return v;
}

sg::knn::Placement random_placement(std::size_t side, std::size_t markers, std::size_t queries) {
    sg::Rng rng(11);
    sg::knn::Placement p;
    p.grid_rows = p.grid_cols = side;
    std::vector<bool> used(side * side);
    while (p.entries.size() < markers + queries) {
        const std::size_t cell = rng.below(side * side);
        if (used[cell]) continue;
        used[cell] = true;
        const std::size_t i = p.entries.size();
        sg::knn::PlacementEntry e{i + 1, cell / side, cell % side, std::nullopt};
        if (i < markers) e.label = rng.below(2) ? "a" : "b";
        p.entries.push_back(e);
    }
    return p;
}

void BM_MomentSums_Serial(benchmark::State& st) {
    const auto img = disk_image(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(sg::kernels::moment_sums_serial(img, 10.5, 20.25));
    st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(img.size()));
}
void BM_MomentSums_Parallel(benchmark::State& st) {
    const auto img = disk_image(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(sg::kernels::moment_sums(img, 10.5, 20.25));
    st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(img.size()));
}
BENCHMARK(BM_MomentSums_Serial)->Arg(256)->Arg(1024)->Arg(2048);
BENCHMARK(BM_MomentSums_Parallel)->Arg(256)->Arg(1024)->Arg(2048);

void BM_Histogram_Serial(benchmark::State& st) {
    const auto v = noise(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(sg::kernels::histogram_serial(v));
    st.SetBytesProcessed(st.iterations() * st.range(0));
}
void BM_Histogram_Parallel(benchmark::State& st) {
    const auto v = noise(static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(sg::kernels::histogram(v));
    st.SetBytesProcessed(st.iterations() * st.range(0));
}
BENCHMARK(BM_Histogram_Serial)->Arg(1 << 16)->Arg(1 << 22);
BENCHMARK(BM_Histogram_Parallel)->Arg(1 << 16)->Arg(1 << 22);

void BM_Decay_Serial(benchmark::State& st) {
    std::vector<double> f(static_cast<std::size_t>(st.range(0)), 1.0);
    for (auto _ : st) {
        sg::kernels::decay_serial(f, 1e-9);
        benchmark::ClobberMemory();
    }
}
void BM_Decay_Parallel(benchmark::State& st) {
    std::vector<double> f(static_cast<std::size_t>(st.range(0)), 1.0);
    for (auto _ : st) {
        sg::kernels::decay(f, 1e-9);
        benchmark::ClobberMemory();
    }
}
BENCHMARK(BM_Decay_Serial)->Arg(225)->Arg(3249)->Arg(1 << 20);
BENCHMARK(BM_Decay_Parallel)->Arg(225)->Arg(3249)->Arg(1 << 20);

void BM_Knn_Serial(benchmark::State& st) {
    const auto p = random_placement(200, 500, static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(sg::knn::knn_classify_serial(p, 5));
}
void BM_Knn_Parallel(benchmark::State& st) {
    const auto p = random_placement(200, 500, static_cast<std::size_t>(st.range(0)));
    for (auto _ : st) benchmark::DoNotOptimize(sg::knn::knn_classify(p, 5));
}
BENCHMARK(BM_Knn_Serial)->Arg(100)->Arg(2000);
BENCHMARK(BM_Knn_Parallel)->Arg(100)->Arg(2000);

}  // namespace

BENCHMARK_MAIN();

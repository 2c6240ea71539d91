#include "stigmergia/kernels.hpp"

#include <vector>

#include <omp.h>

namespace stigmergia::kernels {

namespace {

// Below this many elements the fork/join cost dominates.
constexpr std::size_t kParallelThreshold = 1 << 15;

using RowSums = std::array<double, 4>;

RowSums row_power_sums(std::span<const std::uint8_t> row, double c0) {
    CompensatedSum acc[4];
    for (std::size_t c = 0; c < row.size(); ++c) {
        if (!row[c]) continue;
        const double dc = static_cast<double>(c) - c0;
        acc[0].add(1.0);
        acc[1].add(dc);
        acc[2].add(dc * dc);
        acc[3].add(dc * dc * dc);
    }
    return {acc[0].value(), acc[1].value(), acc[2].value(), acc[3].value()};
}

MomentSums combine_rows(const std::vector<RowSums>& rows, double r0) {
    CompensatedSum acc[4][4];
    for (std::size_t r = 0; r < rows.size(); ++r) {
        const RowSums& s = rows[r];
        if (s[0] == 0.0) continue;
        const double dr = static_cast<double>(r) - r0;
        const double pw[4] = {1.0, dr, dr * dr, dr * dr * dr};
        for (int p = 0; p <= 3; ++p)
            for (int q = 0; p + q <= 3; ++q) acc[p][q].add(pw[p] * s[q]);
    }
    MomentSums out{};
    for (int p = 0; p <= 3; ++p)
        for (int q = 0; p + q <= 3; ++q) out[p][q] = acc[p][q].value();
    return out;
}

}  // namespace

MomentSums moment_sums(const BinaryImage& img, double r0, double c0) {
    const auto rows = static_cast<std::ptrdiff_t>(img.rows());
    std::vector<RowSums> partial(img.rows());
#pragma omp parallel for schedule(static) if (img.size() >= kParallelThreshold)
    for (std::ptrdiff_t r = 0; r < rows; ++r) partial[r] = row_power_sums(img.row(r), c0);
    return combine_rows(partial, r0);
}

MomentSums moment_sums_serial(const BinaryImage& img, double r0, double c0) {
    CompensatedSum acc[4][4];
    for (std::size_t r = 0; r < img.rows(); ++r) {
        for (std::size_t c = 0; c < img.cols(); ++c) {
            if (!img(r, c)) continue;
            const double dr = static_cast<double>(r) - r0;
            const double dc = static_cast<double>(c) - c0;
            for (int p = 0; p <= 3; ++p)
                for (int q = 0; p + q <= 3; ++q) acc[p][q].add(std::pow(dr, p) * std::pow(dc, q));
        }
    }
    MomentSums out{};
    for (int p = 0; p <= 3; ++p)
        for (int q = 0; p + q <= 3; ++q) out[p][q] = acc[p][q].value();
    return out;
}

Histogram histogram(std::span<const std::uint8_t> pixels) {
    Histogram total{};
    const auto n = static_cast<std::ptrdiff_t>(pixels.size());
#pragma omp parallel if (pixels.size() >= kParallelThreshold)
    {
        Histogram local{};
#pragma omp for schedule(static) nowait
        for (std::ptrdiff_t i = 0; i < n; ++i) ++local[pixels[i]];
#pragma omp critical
        for (std::size_t v = 0; v < 256; ++v) total[v] += local[v];
    }
    return total;
}

Histogram histogram_serial(std::span<const std::uint8_t> pixels) {
    Histogram h{};
    for (auto v : pixels) ++h[v];
    return h;
}

void decay(std::span<double> field, double rate) {
    const double keep = 1.0 - rate;
    const auto n = static_cast<std::ptrdiff_t>(field.size());
#pragma omp parallel for simd schedule(static) if (field.size() >= kParallelThreshold)
    for (std::ptrdiff_t i = 0; i < n; ++i) field[i] *= keep;
}

void decay_serial(std::span<double> field, double rate) {
    const double keep = 1.0 - rate;
    for (double& s : field) s *= keep;
}

}  // namespace stigmergia::kernels

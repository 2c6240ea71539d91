#pragma once

// Data-parallel inner loops. Each OpenMP kernel has a plain serial twin used as the
// reference in tests and benchmarks. Parallel kernels produce results that do not
// depend on the thread count.

#include <array>
#include <cmath>
#include <cstdint>
#include <span>

#include "stigmergia/image.hpp"

namespace stigmergia::kernels {

// sums[p][q] = sum over object pixels of (r - r0)^p (c - c0)^q, for p + q <= 3.
// Entries with p + q > 3 are left at zero.
using MomentSums = std::array<std::array<double, 4>, 4>;

MomentSums moment_sums(const BinaryImage& img, double r0, double c0);
MomentSums moment_sums_serial(const BinaryImage& img, double r0, double c0);

using Histogram = std::array<std::uint64_t, 256>;

Histogram histogram(std::span<const std::uint8_t> pixels);
Histogram histogram_serial(std::span<const std::uint8_t> pixels);

// sigma <- sigma * (1 - rate)
void decay(std::span<double> field, double rate);
void decay_serial(std::span<double> field, double rate);

// Neumaier-compensated accumulator.
class CompensatedSum {
public:
    void add(double x) {
        const double t = sum_ + x;
        if (std::abs(sum_) >= std::abs(x))
            comp_ += (sum_ - t) + x;
        else
            comp_ += (x - t) + sum_;
        sum_ = t;
    }
    double value() const { return sum_ + comp_; }

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

}  // namespace stigmergia::kernels

#pragma once

#include <array>
#include <span>
#include <utility>
#include <vector>

#include "stigmergia/image.hpp"

namespace stigmergia {

constexpr int kMaxMomentOrder = 3;

// Moment tables are indexed [p][q]; only entries with p + q <= 3 are meaningful.
using MomentTable = std::array<std::array<double, 4>, 4>;

struct MomentSet {
    MomentTable raw{};         // about the image origin, zero-based (row, col)
    double centroid_r = 0.0;   // m10 / m00
    double centroid_c = 0.0;   // m01 / m00
    MomentTable central{};     // about the centroid; central[1][0] == central[0][1] == 0
    MomentTable normalized{};  // central / m00^(1 + (p+q)/2), filled for p + q in {2, 3}
};

using HuVector = std::array<double, 7>;

struct FeatureVector {
    std::vector<double> values;

    std::size_t size() const { return values.size(); }
    double operator[](std::size_t i) const { return values[i]; }
    friend bool operator==(const FeatureVector&, const FeatureVector&) = default;
};

// Sum of r^p c^q f(r,c). Returns 0 for an all-background image.
// Throws std::invalid_argument when p + q > 3.
double raw_moment(const BinaryImage& img, int p, int q);

// (m10/m00, m01/m00). Throws EmptyObject.
std::pair<double, double> centroid(const BinaryImage& img);

// Raw and central moments up to order 3. Throws EmptyObject.
MomentSet central_moments(const BinaryImage& img);

// Fills m.normalized. Throws EmptyObject when m.raw[0][0] <= 0.
MomentSet normalized_central_moments(MomentSet m);

// The seven Hu rotation invariants from normalized central moments.
HuVector hu_moments(const MomentSet& m);

// Convenience: segmentation-free path from a binary mask to h1..h7.
HuVector hu_moments(const BinaryImage& img);

struct LogTransform {
    enum class Base { natural, ten };
    Base base = Base::natural;
    bool keep_sign = true;   // sign(x) * log(|x| + epsilon); sign(0) == 0
    double epsilon = 1e-30;
};

double log_transform(double x, const LogTransform& t = {});
HuVector log_normalize(const HuVector& h, const LogTransform& t = {});

// Per-feature min-max scaling over the whole set; constant features map to 0.
// Throws InsufficientData (fewer than 2 vectors), DimensionMismatch.
std::vector<FeatureVector> minmax_normalize(std::span<const FeatureVector> features);

FeatureVector to_feature_vector(const HuVector& h);

}  // namespace stigmergia

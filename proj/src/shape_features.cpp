#include "stigmergia/shape_features.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "stigmergia/errors.hpp"
#include "stigmergia/kernels.hpp"

namespace stigmergia {

BinaryImage make_binary_image(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> pixels) {
    if (rows == 0 || cols == 0) throw std::invalid_argument("binary image: rows and cols must be positive");
    for (auto v : pixels)
        if (v > 1) throw std::invalid_argument("binary image: pixel values must be 0 or 1");
    return BinaryImage(rows, cols, std::move(pixels));
}

std::size_t count_object_pixels(const BinaryImage& img) {
    return static_cast<std::size_t>(std::count_if(img.pixels().begin(), img.pixels().end(),
                                                  [](std::uint8_t v) { return v != 0; }));
}

namespace {

void check_order(int p, int q) {
    if (p < 0 || q < 0 || p + q > kMaxMomentOrder)
        throw std::invalid_argument("moment order p+q must be in [0, 3]");
}

struct BoundingBox {
    std::size_t top = 0, left = 0, bottom = 0, right = 0;  // inclusive
};

BoundingBox object_bounds(const BinaryImage& img) {
    BoundingBox b{img.rows(), img.cols(), 0, 0};
    bool any = false;
    for (std::size_t r = 0; r < img.rows(); ++r) {
        for (std::size_t c = 0; c < img.cols(); ++c) {
            if (!img(r, c)) continue;
            any = true;
            b.top = std::min(b.top, r);
            b.bottom = std::max(b.bottom, r);
            b.left = std::min(b.left, c);
            b.right = std::max(b.right, c);
        }
    }
    if (!any) throw EmptyObject("image contains no object pixels");
    return b;
}

// The object cropped to its bounding box; identical for every translate of the object.
BinaryImage crop(const BinaryImage& img, const BoundingBox& b) {
    BinaryImage out(b.bottom - b.top + 1, b.right - b.left + 1);
    for (std::size_t r = b.top; r <= b.bottom; ++r)
        for (std::size_t c = b.left; c <= b.right; ++c) out(r - b.top, c - b.left) = img(r, c);
    return out;
}

}  // namespace

double raw_moment(const BinaryImage& img, int p, int q) {
    check_order(p, q);
    return kernels::moment_sums(img, 0.0, 0.0)[p][q];
}

std::pair<double, double> centroid(const BinaryImage& img) {
    const auto s = kernels::moment_sums(img, 0.0, 0.0);
    if (s[0][0] <= 0.0) throw EmptyObject("centroid of an empty image");
    return {s[1][0] / s[0][0], s[0][1] / s[0][0]};
}

MomentSet central_moments(const BinaryImage& img) {
    MomentSet m;
    m.raw = kernels::moment_sums(img, 0.0, 0.0);
    if (m.raw[0][0] <= 0.0) throw EmptyObject("central moments of an empty image");
    m.centroid_r = m.raw[1][0] / m.raw[0][0];
    m.centroid_c = m.raw[0][1] / m.raw[0][0];

    // Central moments are taken on the bounding-box crop so that they depend only on
    // the object's shape, not its position in the frame.
    const BinaryImage obj = crop(img, object_bounds(img));
    const auto local = kernels::moment_sums(obj, 0.0, 0.0);
    const double cr = local[1][0] / local[0][0];
    const double cc = local[0][1] / local[0][0];
    m.central = kernels::moment_sums(obj, cr, cc);
    m.central[0][0] = m.raw[0][0];
    m.central[1][0] = 0.0;
    m.central[0][1] = 0.0;
    return m;
}

MomentSet normalized_central_moments(MomentSet m) {
    const double area = m.raw[0][0];
    if (!(area > 0.0)) throw EmptyObject("normalized moments need a positive area");
    m.normalized = {};
    for (int p = 0; p <= 3; ++p) {
        for (int q = 0; p + q <= 3; ++q) {
            if (p + q < 2) continue;
            const double g = 1.0 + (p + q) / 2.0;
            m.normalized[p][q] = m.central[p][q] / std::pow(area, g);
        }
    }
    return m;
}

HuVector hu_moments(const MomentSet& m) {
    const auto& n = m.normalized;
    const double n20 = n[2][0], n02 = n[0][2], n11 = n[1][1];
    const double n30 = n[3][0], n03 = n[0][3], n21 = n[2][1], n12 = n[1][2];

    const double a = n30 + n12;        // (n30 + n12)
    const double b = n21 + n03;        // (n21 + n03)
    const double u = n30 - 3.0 * n12;  // (n30 - 3 n12)
    const double v = 3.0 * n21 - n03;  // (3 n21 - n03)
    const double diff = n20 - n02;

    HuVector h;
    h[0] = n20 + n02;
    h[1] = diff * diff + 4.0 * n11 * n11;
    h[2] = u * u + v * v;
    h[3] = a * a + b * b;
    h[4] = u * a * (a * a - 3.0 * b * b) + v * b * (3.0 * a * a - b * b);
    h[5] = diff * (a * a - b * b) + 4.0 * n11 * a * b;
    h[6] = v * a * (a * a - 3.0 * b * b) - u * b * (3.0 * a * a - b * b);
    return h;
}

HuVector hu_moments(const BinaryImage& img) {
    return hu_moments(normalized_central_moments(central_moments(img)));
}

double log_transform(double x, const LogTransform& t) {
    const double mag = std::abs(x) + t.epsilon;
    const double l = t.base == LogTransform::Base::ten ? std::log10(mag) : std::log(mag);
    if (!t.keep_sign) return l;
    if (x > 0.0) return l;
    if (x < 0.0) return -l;
    return 0.0;
}

HuVector log_normalize(const HuVector& h, const LogTransform& t) {
    HuVector out;
    for (std::size_t i = 0; i < h.size(); ++i) out[i] = log_transform(h[i], t);
    return out;
}

std::vector<FeatureVector> minmax_normalize(std::span<const FeatureVector> features) {
    if (features.size() < 2) throw InsufficientData("min-max normalization needs at least 2 vectors");
    const std::size_t dims = features.front().size();
    for (const auto& f : features)
        if (f.size() != dims) throw DimensionMismatch("feature vectors differ in length");

    std::vector<double> lo(dims, std::numeric_limits<double>::infinity());
    std::vector<double> hi(dims, -std::numeric_limits<double>::infinity());
    for (const auto& f : features) {
        for (std::size_t i = 0; i < dims; ++i) {
            lo[i] = std::min(lo[i], f[i]);
            hi[i] = std::max(hi[i], f[i]);
        }
    }

    std::vector<FeatureVector> out(features.size());
    for (std::size_t k = 0; k < features.size(); ++k) {
        out[k].values.resize(dims);
        for (std::size_t i = 0; i < dims; ++i) {
            const double range = hi[i] - lo[i];
            double v = range > 0.0 ? (features[k][i] - lo[i]) / range : 0.0;
            out[k].values[i] = std::clamp(v, 0.0, 1.0);
        }
    }
    return out;
}

FeatureVector to_feature_vector(const HuVector& h) { return FeatureVector{{h.begin(), h.end()}}; }

}  // namespace stigmergia

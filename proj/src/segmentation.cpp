#include "stigmergia/segmentation.hpp"

#include <array>
#include <deque>
#include <vector>

#include "stigmergia/errors.hpp"
#include "stigmergia/kernels.hpp"

namespace stigmergia {

std::uint8_t histogram_threshold(const GreyImage& img) {
    if (img.empty()) throw std::invalid_argument("histogram_threshold: empty image");
    const auto hist = kernels::histogram(img.pixels());

    long double total_w = 0, total_s = 0;
    for (int v = 0; v < 256; ++v) {
        total_w += hist[v];
        total_s += static_cast<long double>(hist[v]) * v;
    }

    long double best = 0;
    int best_t = -1;
    long double w0 = 0, s0 = 0;
    for (int t = 0; t < 255; ++t) {
        w0 += hist[t];
        s0 += static_cast<long double>(hist[t]) * t;
        const long double w1 = total_w - w0;
        if (w0 == 0 || w1 == 0) continue;
        // w0 w1 (mu0 - mu1)^2 scaled by total_w^2 (constant across t)
        const long double d = s0 * total_w - total_s * w0;
        const long double between = d * d / (w0 * w1);
        if (between > best) {
            best = between;
            best_t = t;
        }
    }
    if (best_t < 0) throw DegenerateHistogram("image is constant; no threshold separates it");
    return static_cast<std::uint8_t>(best_t);
}

BinaryImage binarize(const GreyImage& img, std::uint8_t t, Polarity polarity) {
    BinaryImage out(img.rows(), img.cols());
    auto src = img.pixels();
    auto dst = out.pixels();
    const bool dark = polarity != Polarity::light;
    std::size_t object = 0;
    for (std::size_t i = 0; i < src.size(); ++i) {
        dst[i] = dark ? (src[i] <= t) : (src[i] > t);
        object += dst[i];
    }
    if (polarity == Polarity::automatic && 2 * object > src.size())
        for (auto& v : dst) v ^= 1;
    return out;
}

BinaryImage largest_component(const BinaryImage& img) {
    const std::size_t rows = img.rows(), cols = img.cols();
    std::vector<std::uint32_t> label(img.size(), 0);
    std::uint32_t best_label = 0;
    std::size_t best_size = 0;
    std::uint32_t next = 0;
    std::vector<std::size_t> stack;

    // Components are discovered in row-major order of their first pixel, so a strict '>'
    // keeps the earliest one on size ties.
    for (std::size_t start = 0; start < img.size(); ++start) {
        if (!img.pixels()[start] || label[start]) continue;
        const std::uint32_t id = ++next;
        std::size_t size = 0;
        label[start] = id;
        stack.push_back(start);
        while (!stack.empty()) {
            const std::size_t i = stack.back();
            stack.pop_back();
            ++size;
            const std::size_t r = i / cols, c = i % cols;
            for (int dr = -1; dr <= 1; ++dr) {
                for (int dc = -1; dc <= 1; ++dc) {
                    if (!dr && !dc) continue;
                    const auto nr = static_cast<std::ptrdiff_t>(r) + dr;
                    const auto nc = static_cast<std::ptrdiff_t>(c) + dc;
                    if (nr < 0 || nc < 0 || nr >= static_cast<std::ptrdiff_t>(rows) ||
                        nc >= static_cast<std::ptrdiff_t>(cols))
                        continue;
                    const std::size_t j = static_cast<std::size_t>(nr) * cols + static_cast<std::size_t>(nc);
                    if (img.pixels()[j] && !label[j]) {
                        label[j] = id;
                        stack.push_back(j);
                    }
                }
            }
        }
        if (size > best_size) {
            best_size = size;
            best_label = id;
        }
    }
    if (best_size == 0) throw EmptyObject("no object pixels to label");

    BinaryImage out(rows, cols);
    for (std::size_t i = 0; i < img.size(); ++i) out.pixels()[i] = label[i] == best_label;
    return out;
}

BinaryImage segment(const GreyImage& img, Polarity polarity) {
    return largest_component(binarize(img, histogram_threshold(img), polarity));
}

}  // namespace stigmergia

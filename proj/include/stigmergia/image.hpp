#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

namespace stigmergia {

// Row-major raster. Pixel (r, c) lives at r * cols + c, row 0 at the top.
template <typename Pixel>
class Raster {
public:
    Raster() = default;
    Raster(std::size_t rows, std::size_t cols, Pixel fill = Pixel{})
        : rows_(rows), cols_(cols), pixels_(rows * cols, fill) {}
    Raster(std::size_t rows, std::size_t cols, std::vector<Pixel> pixels)
        : rows_(rows), cols_(cols), pixels_(std::move(pixels)) {
        if (pixels_.size() != rows_ * cols_) throw std::invalid_argument("raster: pixel count != rows * cols");
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    std::size_t size() const { return pixels_.size(); }
    bool empty() const { return pixels_.empty(); }

    Pixel operator()(std::size_t r, std::size_t c) const { return pixels_[r * cols_ + c]; }
    Pixel& operator()(std::size_t r, std::size_t c) { return pixels_[r * cols_ + c]; }

    std::span<const Pixel> pixels() const { return pixels_; }
    std::span<Pixel> pixels() { return pixels_; }
    std::span<const Pixel> row(std::size_t r) const { return {pixels_.data() + r * cols_, cols_}; }

    friend bool operator==(const Raster&, const Raster&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Pixel> pixels_;
};

// Values are exactly 0 (background) or 1 (object).
using BinaryImage = Raster<std::uint8_t>;
using GreyImage = Raster<std::uint8_t>;

// Validates pixel count and, for binary images, the {0,1} domain. Throws std::invalid_argument.
BinaryImage make_binary_image(std::size_t rows, std::size_t cols, std::vector<std::uint8_t> pixels);

std::size_t count_object_pixels(const BinaryImage& img);

}  // namespace stigmergia

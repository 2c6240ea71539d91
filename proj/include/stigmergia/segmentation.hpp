#pragma once

#include <cstdint>

#include "stigmergia/image.hpp"

namespace stigmergia {

// Otsu threshold over the 256-level histogram: pixels <= t form one class, > t the other.
// Ties in between-class variance resolve to the lowest t. Throws DegenerateHistogram when
// no threshold separates anything (constant image).
std::uint8_t histogram_threshold(const GreyImage& img);

enum class Polarity {
    dark,   // object pixels have intensity <= t
    light,  // object pixels have intensity > t
    automatic,  // dark, flipped when the object would cover more than half the frame
};

BinaryImage binarize(const GreyImage& img, std::uint8_t t, Polarity polarity);
inline BinaryImage binarize(const GreyImage& img, std::uint8_t t, bool object_is_dark) {
    return binarize(img, t, object_is_dark ? Polarity::dark : Polarity::light);
}

// Keeps the largest 8-connected component; equal sizes go to the component whose first
// pixel in row-major order comes first. Throws EmptyObject.
BinaryImage largest_component(const BinaryImage& img);

// threshold -> binarize -> largest component.
BinaryImage segment(const GreyImage& img, Polarity polarity = Polarity::automatic);

}  // namespace stigmergia

#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include "stigmergia/image.hpp"

namespace stigmergia::netpbm {

// Reads P2/P5 greymaps and P3/P6 pixmaps. Samples with maxval != 255 are rescaled to
// 0..255 by rounding; colour pixels become the rounded mean of their channels.
// Throws ParseError.
GreyImage read_grey(std::istream& in);
GreyImage read_grey(const std::filesystem::path& path);

// Binary P5, maxval 255.
void write_pgm(std::ostream& out, const GreyImage& img);
void write_pgm(const std::filesystem::path& path, const GreyImage& img);

// Mask as P5 with object = 255, background = 0.
void write_mask(const std::filesystem::path& path, const BinaryImage& mask);

}  // namespace stigmergia::netpbm

#include "stigmergia/netpbm.hpp"

#include <cctype>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <vector>

#include "stigmergia/errors.hpp"

namespace stigmergia::netpbm {

namespace {

// Skips whitespace and '#' comments (to end of line).
void skip_space(std::istream& in) {
    for (;;) {
        const int ch = in.peek();
        if (ch == '#') {
            in.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
        } else if (ch != EOF && std::isspace(ch)) {
            in.get();
        } else {
            return;
        }
    }
}

unsigned long read_uint(std::istream& in, const char* what) {
    skip_space(in);
    if (!std::isdigit(in.peek())) throw ParseError(std::string("netpbm: expected ") + what);
    unsigned long v = 0;
    while (std::isdigit(in.peek())) {
        v = v * 10 + static_cast<unsigned long>(in.get() - '0');
        if (v > 0xFFFFFFFFul) throw ParseError(std::string("netpbm: value too large for ") + what);
    }
    return v;
}

std::uint8_t rescale(unsigned long v, unsigned long maxval) {
    if (v > maxval) throw ParseError("netpbm: sample exceeds maxval");
    if (maxval == 255) return static_cast<std::uint8_t>(v);
    return static_cast<std::uint8_t>((v * 255 + maxval / 2) / maxval);
}

}  // namespace

GreyImage read_grey(std::istream& in) {
    char magic[2] = {0, 0};
    if (!in.read(magic, 2) || magic[0] != 'P') throw ParseError("netpbm: missing magic number");
    const char kind = magic[1];
    if (kind != '2' && kind != '3' && kind != '5' && kind != '6')
        throw ParseError(std::string("netpbm: unsupported format P") + kind);
    const bool plain = kind == '2' || kind == '3';
    const int channels = (kind == '3' || kind == '6') ? 3 : 1;

    const unsigned long cols = read_uint(in, "width");
    const unsigned long rows = read_uint(in, "height");
    const unsigned long maxval = read_uint(in, "maxval");
    if (cols == 0 || rows == 0) throw ParseError("netpbm: zero dimension");
    if (maxval == 0 || maxval > 65535) throw ParseError("netpbm: maxval out of range");

    if (!plain) {
        // exactly one whitespace byte separates the header from the raster
        const int sep = in.get();
        if (sep == EOF || !std::isspace(sep)) throw ParseError("netpbm: malformed header");
    }

    const std::size_t count = static_cast<std::size_t>(rows) * cols;
    std::vector<std::uint8_t> pixels(count);
    const int sample_bytes = maxval < 256 ? 1 : 2;
    for (std::size_t i = 0; i < count; ++i) {
        unsigned long acc = 0;
        for (int ch = 0; ch < channels; ++ch) {
            unsigned long v = 0;
            if (plain) {
                v = read_uint(in, "sample");
            } else {
                for (int b = 0; b < sample_bytes; ++b) {
                    const int byte = in.get();
                    if (byte == EOF) throw ParseError("netpbm: truncated raster");
                    v = (v << 8) | static_cast<unsigned long>(byte);
                }
            }
            if (v > maxval) throw ParseError("netpbm: sample exceeds maxval");
            acc += v;
        }
        // rounded channel mean, still on the 0..maxval scale
        pixels[i] = rescale((acc + channels / 2) / channels, maxval);
    }
    return GreyImage(rows, cols, std::move(pixels));
}

GreyImage read_grey(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError("cannot open " + path.string());
    return read_grey(in);
}

void write_pgm(std::ostream& out, const GreyImage& img) {
    out << "P5\n" << img.cols() << ' ' << img.rows() << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels().data()), static_cast<std::streamsize>(img.size()));
}

void write_pgm(const std::filesystem::path& path, const GreyImage& img) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    write_pgm(out, img);
}

void write_mask(const std::filesystem::path& path, const BinaryImage& mask) {
    GreyImage g(mask.rows(), mask.cols());
    for (std::size_t i = 0; i < mask.size(); ++i) g.pixels()[i] = mask.pixels()[i] ? 255 : 0;
    write_pgm(path, g);
}

}  // namespace stigmergia::netpbm

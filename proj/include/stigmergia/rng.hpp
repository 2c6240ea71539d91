#pragma once

#include <cstdint>
#include <random>

namespace stigmergia {

// 64-bit Mersenne Twister with explicit draw conversions. std::mt19937_64's output
// sequence is fixed by the standard; the distributions in <random> are not, so the
// conversions to [0,1) and [0,n) are done here.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform on [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    // Uniform integer on [0, n), n > 0, by rejection of the biased tail.
    std::uint64_t below(std::uint64_t n) {
        const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
        for (;;) {
            const std::uint64_t x = engine_();
            if (x < limit) return x % n;
        }
    }

    friend bool operator==(const Rng&, const Rng&) = default;

private:
    std::mt19937_64 engine_;
};

}  // namespace stigmergia

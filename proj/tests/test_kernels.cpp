#include <doctest.h>

#include <omp.h>

#include "stigmergia/kernels.hpp"
#include "test_support.hpp"

using namespace stigmergia;

TEST_CASE("moment sums: parallel kernel matches the serial reference") {
    Rng rng(1);
    // large enough to take the parallel path
    const auto blob = testsupport::random_blob(rng, 400);
    const auto par = kernels::moment_sums(blob, 201.25, 187.5);
    const auto ser = kernels::moment_sums_serial(blob, 201.25, 187.5);
    for (int p = 0; p <= 3; ++p)
        for (int q = 0; p + q <= 3; ++q) {
            CAPTURE(p);
            CAPTURE(q);
            const double scale = std::max(1.0, std::abs(ser[p][q]));
            CHECK(std::abs(par[p][q] - ser[p][q]) <= 1e-12 * scale * 1e3);
        }
}

TEST_CASE("moment sums do not depend on the thread count") {
    Rng rng(2);
    const auto blob = testsupport::random_blob(rng, 400);
    const int saved = omp_get_max_threads();
    omp_set_num_threads(1);
    const auto one = kernels::moment_sums(blob, 3.5, 7.25);
    omp_set_num_threads(4);
    const auto four = kernels::moment_sums(blob, 3.5, 7.25);
    omp_set_num_threads(saved);
    CHECK(one == four);
}

TEST_CASE("histogram kernels agree") {
    Rng rng(3);
    std::vector<std::uint8_t> v(100000);
    for (auto& x : v) x = static_cast<std::uint8_t>(rng.below(256));
    CHECK(kernels::histogram(v) == kernels::histogram_serial(v));
    std::uint64_t total = 0;
    for (auto c : kernels::histogram(v)) total += c;
    CHECK(total == v.size());
}

TEST_CASE("decay kernels agree") {
    for (std::size_t n : {std::size_t{9}, std::size_t{1} << 16}) {
        std::vector<double> a(n), b(n);
        for (std::size_t i = 0; i < n; ++i) a[i] = b[i] = 0.001 * static_cast<double>(i);
        kernels::decay(a, 0.015);
        kernels::decay_serial(b, 0.015);
        CHECK(a == b);
        CHECK(a[1] == doctest::Approx(0.001 * 0.985));
    }
}

TEST_CASE("compensated sum recovers small addends") {
    kernels::CompensatedSum s;
    s.add(1e16);
    for (int i = 0; i < 1000; ++i) s.add(1.0);
    s.add(-1e16);
    CHECK(s.value() == 1000.0);
}

#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <random>
#include <vector>

#include "slmsrl1/simd/kernels.hpp"

using namespace slmsrl1::simd;

namespace {

std::vector<double> random_vec(std::size_t n, std::mt19937_64& rng, double zero_fraction = 0.0) {
    std::normal_distribution<double> g(0.0, 1.0);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::vector<double> v(n);
    for (double& x : v) x = u(rng) < zero_fraction ? (u(rng) < 0.5 ? 0.0 : -0.0) : g(rng);
    return v;
}

bool bitwise_equal(const std::vector<double>& a, const std::vector<double>& b) {
    return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

const std::size_t kLengths[] = {0, 1, 2, 3, 4, 5, 7, 8, 9, 15, 16, 17, 79, 80, 81, 257};

}  // namespace

TEST_CASE("scalar reference reductions match long-double brute force") {
    std::mt19937_64 rng(1);
    const KernelTable& k = scalar_kernels();
    for (std::size_t n : kLengths) {
        const auto a = random_vec(n, rng), b = random_vec(n, rng);
        long double dot = 0.0L, dist = 0.0L, mag = 0.0L;
        for (std::size_t i = 0; i < n; ++i) {
            dot += static_cast<long double>(a[i]) * b[i];
            dist += (static_cast<long double>(a[i]) - b[i]) * (static_cast<long double>(a[i]) - b[i]);
            mag += std::fabs(a[i] * b[i]);
        }
        CHECK(std::fabs(k.dot(a.data(), b.data(), n) - static_cast<double>(dot)) <= 1e-14 * (1.0 + static_cast<double>(mag)));
        CHECK(std::fabs(k.sq_dist(a.data(), b.data(), n) - static_cast<double>(dist)) <=
              1e-14 * (1.0 + static_cast<double>(dist)));
    }
}

TEST_CASE("scalar update_rl1 follows the elementwise formula") {
    const double cur[] = {0.5, -0.2, 0.0, -0.0};
    const double prev[] = {0.4, -0.1, 0.3, 0.0};
    const double x[] = {1.0, -1.0, 1.0, -1.0};
    double out[4];
    scalar_kernels().update_rl1(out, cur, prev, x, -0.01, 0.001, 0.05, 4);
    CHECK(out[0] == doctest::Approx(0.49 - 0.001 / 0.45).epsilon(1e-15));
    CHECK(out[1] == doctest::Approx(-0.19 + 0.001 / 0.15).epsilon(1e-15));
    CHECK(out[2] == -0.01);  // sgn(0) = 0: no attraction at an exact zero
    CHECK(out[3] == 0.01);
}

TEST_CASE("every available kernel table agrees with the scalar reference") {
    const KernelTable& ref = scalar_kernels();
    const auto tables = available_kernels();
    REQUIRE(!tables.empty());
    CHECK(tables.front()->isa == Isa::Scalar);

    std::mt19937_64 rng(2);
    for (const KernelTable* k : tables) {
        CAPTURE(isa_name(k->isa));
        for (std::size_t n : kLengths) {
            CAPTURE(n);
            for (int rep = 0; rep < 20; ++rep) {
                const auto cur = random_vec(n, rng, 0.3);
                const auto prev = random_vec(n, rng, 0.3);
                const auto x = random_vec(n, rng);
                const double gain = rep % 3 == 0 ? 0.0 : 0.01 * (rep % 2 ? 1.0 : -1.0);
                const double rho = rep % 4 == 0 ? 0.0 : 1e-3 * rep;

                std::vector<double> want(n), got(n);
                ref.update_rl1(want.data(), cur.data(), prev.data(), x.data(), gain, rho, 0.05, n);
                k->update_rl1(got.data(), cur.data(), prev.data(), x.data(), gain, rho, 0.05, n);
                CHECK(bitwise_equal(want, got));

                ref.axpy(want.data(), cur.data(), x.data(), gain, n);
                k->axpy(got.data(), cur.data(), x.data(), gain, n);
                CHECK(bitwise_equal(want, got));

                double mag = 0.0, dist = 0.0;
                for (std::size_t i = 0; i < n; ++i) {
                    mag += std::fabs(cur[i] * x[i]);
                    dist += (cur[i] - x[i]) * (cur[i] - x[i]);
                }
                CHECK(std::fabs(k->dot(cur.data(), x.data(), n) - ref.dot(cur.data(), x.data(), n)) <= 1e-13 * mag);
                CHECK(std::fabs(k->sq_dist(cur.data(), x.data(), n) - ref.sq_dist(cur.data(), x.data(), n)) <=
                      1e-13 * dist);
            }
        }
    }
}

TEST_CASE("non-finite values propagate identically") {
    const double inf = std::numeric_limits<double>::infinity();
    const std::vector<double> cur{1.0, inf, -inf, 0.0, 2.0, 3.0, 4.0, 5.0};
    const std::vector<double> prev{0.0, 0.0, 1.0, inf, 0.0, 0.0, 0.0, 0.0};
    const std::vector<double> x(8, 1.0);
    std::vector<double> want(8);
    scalar_kernels().update_rl1(want.data(), cur.data(), prev.data(), x.data(), 0.01, 0.1, 0.05, 8);
    for (const KernelTable* k : available_kernels()) {
        std::vector<double> got(8);
        k->update_rl1(got.data(), cur.data(), prev.data(), x.data(), 0.01, 0.1, 0.05, 8);
        for (std::size_t i = 0; i < 8; ++i) {
            CHECK(std::isfinite(got[i]) == std::isfinite(want[i]));
            if (std::isfinite(want[i])) CHECK(got[i] == want[i]);
        }
        CHECK(!std::isfinite(k->sq_dist(cur.data(), x.data(), 8)));
    }
}

TEST_CASE("isa names parse and selection round-trips") {
    Isa isa{};
    CHECK(parse_isa("scalar", isa));
    CHECK(isa == Isa::Scalar);
    CHECK(parse_isa("avx2", isa));
    CHECK(isa == Isa::Avx2);
    CHECK_FALSE(parse_isa("sse9", isa));

    const Isa before = active_kernels().isa;
    CHECK(select_kernels(Isa::Scalar));
    CHECK(active_kernels().isa == Isa::Scalar);
    for (const KernelTable* k : available_kernels()) CHECK(select_kernels(k->isa));
    CHECK(select_kernels(before));
}

#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>
#include <stdexcept>
#include <vector>

#include "slmsrl1/channel.hpp"

using namespace slmsrl1;

TEST_CASE("generate_channel: exact sparsity and support") {
    Engine rng(1);
    for (int rep = 0; rep < 200; ++rep) {
        const ChannelRealization ch = generate_channel(80, 4, rng);
        REQUIRE(ch.length() == 80);
        REQUIRE(ch.sparsity() == 4);
        CHECK(std::is_sorted(ch.support.begin(), ch.support.end()));
        CHECK(std::set<std::size_t>(ch.support.begin(), ch.support.end()).size() == 4);
        const auto nonzero = std::count_if(ch.taps.begin(), ch.taps.end(), [](double v) { return v != 0.0; });
        CHECK(nonzero == 4);
        for (std::size_t idx : ch.support) CHECK(ch.taps[idx] != 0.0);
    }
}

TEST_CASE("generate_channel: single tap has unit variance") {
    Engine rng(2);
    const int reps = 100000;
    double sum_sq = 0.0;
    for (int i = 0; i < reps; ++i) {
        const ChannelRealization ch = generate_channel(1, 1, rng);
        REQUIRE(ch.support == std::vector<std::size_t>{0});
        sum_sq += ch.taps[0] * ch.taps[0];
    }
    CHECK(std::fabs(sum_sq / reps - 1.0) < 0.02);
}

TEST_CASE("generate_channel: unit expected energy and uniform support") {
    Engine rng(3);
    const std::size_t n = 80, k = 8;
    const int reps = 100000;
    std::vector<int> hits(n, 0);
    double energy = 0.0;
    for (int i = 0; i < reps; ++i) {
        const ChannelRealization ch = generate_channel(n, k, rng);
        for (std::size_t idx : ch.support) ++hits[idx];
        for (double v : ch.taps) energy += v * v;
    }
    CHECK(std::fabs(energy / reps - 1.0) < 0.02);
    const double p = static_cast<double>(k) / n;
    const double se = std::sqrt(p * (1 - p) / reps);
    for (std::size_t i = 0; i < n; ++i) {
        CAPTURE(i);
        CHECK(std::fabs(hits[i] / static_cast<double>(reps) - p) <= 3 * se);
    }
}

TEST_CASE("generate_channel: normalization and argument checks") {
    Engine rng(4);
    const ChannelRealization ch = generate_channel(80, 16, rng, true);
    double e = 0.0;
    for (double v : ch.taps) e += v * v;
    CHECK(e == doctest::Approx(1.0).epsilon(1e-12));
    CHECK_THROWS_AS(generate_channel(80, 0, rng), std::invalid_argument);
    CHECK_THROWS_AS(generate_channel(80, 81, rng), std::invalid_argument);
    CHECK_NOTHROW(generate_channel(80, 80, rng));
}

TEST_CASE("generate_training: +/-1 values with unit power") {
    Engine rng(5);
    const TrainingSignal small = generate_training(10, rng);
    REQUIRE(small.samples.size() == 10);
    for (double v : small.samples) CHECK((v == 1.0 || v == -1.0));

    const TrainingSignal big = generate_training(1'000'000, rng);
    double sum = 0.0, power = 0.0;
    for (double v : big.samples) {
        sum += v;
        power += v * v;
    }
    CHECK(std::fabs(sum / 1e6) < 0.004);
    CHECK(power / 1e6 == 1.0);
}

TEST_CASE("regressor_at") {
    const TrainingSignal s{{1.0, -1.0, 1.0, 1.0, -1.0}};
    CHECK(regressor_at(s, 0, 3) == std::vector<double>{1.0, 0.0, 0.0});
    CHECK(regressor_at(s, 2, 3) == std::vector<double>{1.0, -1.0, 1.0});
    CHECK(regressor_at(s, 4, 3) == std::vector<double>{-1.0, 1.0, 1.0});
    CHECK_THROWS_AS(regressor_at(s, -1, 3), std::out_of_range);
    CHECK_THROWS_AS(regressor_at(s, 5, 3), std::out_of_range);
    CHECK(regressor_at(s, 3, 3) == regressor_at(s, 3, 3));
}

TEST_CASE("regressor windows slide by one sample and match the zero-copy view") {
    Engine rng(6);
    const TrainingSignal s = generate_training(300, rng);
    const std::size_t n = 80;
    const RegressorWindow window(s, n);
    REQUIRE(window.steps() == 300);
    for (std::ptrdiff_t t = 0; t < 300; ++t) {
        const auto x = regressor_at(s, t, n);
        const auto view = window.at(static_cast<std::size_t>(t));
        REQUIRE(view.size() == n);
        CHECK(std::equal(x.begin(), x.end(), view.begin()));
        if (t > 0) {
            const auto prev = regressor_at(s, t - 1, n);
            CHECK(std::equal(prev.begin(), prev.end() - 1, x.begin() + 1));
            CHECK(x[0] == s.samples[static_cast<std::size_t>(t)]);
        }
    }
}

TEST_CASE("channel rows list nonzero taps") {
    ChannelRealization ch{{0.0, 0.5, 0.0, -0.25}, {1, 3}};
    std::ostringstream os;
    write_channel_rows(os, 7, ch);
    CHECK(os.str() == "7,1,0.5\n7,3,-0.25\n");
}

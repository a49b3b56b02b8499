#include <doctest.h>

#include <cmath>
#include <vector>

#include "slmsrl1/harness.hpp"

using namespace slmsrl1;

namespace {

// Whole-run reference written without the library's filter or kernels:
// same draw order (channel, training, per-step noise), plain loops.
std::vector<double> reference_lms_trace(const RunSpec& spec, std::uint64_t seed) {
    Engine rng(seed);
    const ChannelRealization ch = generate_channel(spec.n, spec.k, rng);
    const TrainingSignal s = generate_training(spec.iterations, rng);
    GmmSampler noise(spec.noise_params());

    std::vector<double> w(spec.n, 0.0), x(spec.n, 0.0), out;
    double energy = 0.0;
    for (double v : ch.taps) energy += v * v;
    for (std::size_t it = 0; it < spec.iterations; ++it) {
        double dist = 0.0;
        for (std::size_t i = 0; i < spec.n; ++i) dist += (w[i] - ch.taps[i]) * (w[i] - ch.taps[i]);
        out.push_back(dist / energy);

        for (std::size_t j = spec.n - 1; j > 0; --j) x[j] = x[j - 1];
        x[0] = s.samples[it];
        double clean = 0.0, y = 0.0;
        for (std::size_t i = 0; i < spec.n; ++i) clean += ch.taps[i] * x[i];
        const double d = clean + noise(rng);
        for (std::size_t i = 0; i < spec.n; ++i) y += w[i] * x[i];
        const double e = d - y;
        for (std::size_t i = 0; i < spec.n; ++i) w[i] += spec.mu * e * x[i];
    }
    return out;
}

RunSpec small_spec(Algorithm a = Algorithm::SLMS_RL1) {
    RunSpec s;
    s.algorithm = a;
    s.iterations = 400;
    return s;
}

ExperimentConfig tiny_config() {
    ExperimentConfig c;
    c.runs = 3;
    c.iterations = 200;
    return c;
}

}  // namespace

TEST_CASE("run_once: dense LMS converges on a quiet channel (reference oracle)") {
    RunSpec spec;
    spec.algorithm = Algorithm::LMS;
    spec.lambda = 0.0;
    spec.phi = 0.0;
    spec.snr_db = 40.0;
    spec.k = spec.n;
    spec.iterations = 2000;

    const MseTrace trace = run_once(spec, 42);
    const std::vector<double> ref = reference_lms_trace(spec, 42);
    REQUIRE(trace.values.size() == ref.size());
    CHECK(trace.values[0] == 1.0);
    CHECK(10.0 * std::log10(trace.values.back()) < -20.0);

    const MseTrace exact = run_once(spec, 42, simd::scalar_kernels());
    CHECK(exact.values == ref);
    for (std::size_t i = 0; i < ref.size(); ++i)
        REQUIRE(trace.values[i] == doctest::Approx(ref[i]).epsilon(1e-9));
}

TEST_CASE("run_once: determinism and contract") {
    const RunSpec spec = small_spec();
    CHECK(run_once(spec, 7).values == run_once(spec, 7).values);
    CHECK(run_once(spec, 7).values != run_once(spec, 8).values);

    RunSpec bad = spec;
    bad.iterations = 0;
    CHECK_THROWS_AS(run_once(bad, 1), ConfigError);
    bad = spec;
    bad.k = 0;
    CHECK_THROWS_AS(run_once(bad, 1), ConfigError);
    bad = spec;
    bad.phi = 1.5;
    CHECK_THROWS_AS(run_once(bad, 1), ConfigError);
}

TEST_CASE("run_once: run_channel reproduces the estimated channel") {
    const RunSpec spec = small_spec();
    const ChannelRealization ch = run_channel(spec, 5);
    Engine rng(5);
    CHECK(generate_channel(spec.n, spec.k, rng).taps == ch.taps);
}

TEST_CASE("run_once: divergence is flagged and the tail holds the last finite value") {
    RunSpec spec = small_spec(Algorithm::LMS);
    spec.mu = 1.0;  // mu * ||x||^2 = 80, far outside the stable range
    spec.iterations = 3000;
    const MseTrace t = run_once(spec, 3);
    REQUIRE(t.diverged);
    REQUIRE(t.diverged_at > 0);
    const double last = t.values[t.diverged_at - 1];
    CHECK(std::isfinite(last));
    for (std::size_t i = t.diverged_at; i < t.values.size(); ++i) CHECK(t.values[i] == last);

    MonteCarloOptions opt;
    opt.runs = 4;
    const AggregateCurve c = monte_carlo(spec, opt);
    CHECK(c.diverged_runs == 4);
    CHECK_FALSE(is_stable(c));
    opt.exclude_diverged = true;
    CHECK(monte_carlo(spec, opt).runs_used == 0);
}

TEST_CASE("monte_carlo: single run, duplicated runs and thread count") {
    const RunSpec spec = small_spec();
    MonteCarloOptions opt;
    opt.runs = 1;
    opt.root_seed = 9;
    opt.stream_key = 77;
    const std::vector<MseTrace> one{run_once(spec, substream_seed(9, 77, 0))};
    CHECK(monte_carlo(spec, opt).mse_db == aggregate(one).mse_db);

    MonteCarloOptions forced = opt;
    forced.runs = 2;
    forced.seed_override = [](std::size_t) { return std::uint64_t{1234}; };
    MonteCarloOptions forced_one = forced;
    forced_one.runs = 1;
    CHECK(monte_carlo(spec, forced).mse_db == monte_carlo(spec, forced_one).mse_db);

    MonteCarloOptions many = opt;
    many.runs = 13;
    many.threads = 1;
    const AggregateCurve serial = monte_carlo(spec, many);
    for (unsigned threads : {2u, 3u, 8u}) {
        many.threads = threads;
        CHECK(monte_carlo(spec, many).mse_db == serial.mse_db);
    }
    CHECK(serial.runs_used == 13);
    CHECK_THROWS_AS(monte_carlo(spec, MonteCarloOptions{.runs = 0}), ConfigError);
}

TEST_CASE("monte_carlo: SLMS_RL1 at the reference setting reaches steady state") {
    RunSpec spec;  // N=80, SNR 10 dB, mu 0.01, delta_r 0.05, phi 0.1, T 400, K 8, lambda 8e-3
    spec.iterations = 15000;
    MonteCarloOptions opt;
    opt.runs = 100;
    opt.root_seed = 2024;
    opt.threads = 4;
    const AggregateCurve c = monte_carlo(spec, opt);
    CHECK(c.mse_db.front() == 0.0);
    CHECK(steady_state(c, 0.1) < -5.0);
    CHECK(is_stable(c));
}

TEST_CASE("is_stable") {
    CHECK(is_stable(AggregateCurve{{0.0, -3.0, -2.0}, 1, 0}));
    CHECK(is_stable(AggregateCurve{{0.0, 0.0}, 1, 0}));
    CHECK_FALSE(is_stable(AggregateCurve{{0.0, -3.0, 0.5}, 1, 0}));
    CHECK_FALSE(is_stable(AggregateCurve{{0.0, std::nan(""), -5.0}, 1, 0}));
    CHECK_FALSE(is_stable(AggregateCurve{}));
}

TEST_CASE("select_lambda") {
    auto cell = [](double lambda, std::size_t k, double ss, bool stable) {
        SweepCell c;
        c.lambda = lambda;
        c.k = k;
        c.steady_state_db = ss;
        c.stable = stable;
        return c;
    };
    SUBCASE("only one lambda stable") {
        std::vector<SweepCell> cells{cell(1e-3, 4, -5, false), cell(1e-2, 4, -3, true), cell(1e-1, 4, -20, false)};
        CHECK(select_lambda(cells) == 1e-2);
    }
    SUBCASE("lowest worst case wins") {
        std::vector<SweepCell> cells{cell(1e-3, 4, -20, true), cell(1e-3, 8, -12, true), cell(1e-2, 4, -18, true),
                                     cell(1e-2, 8, -19, true)};
        CHECK(select_lambda(cells) == 1e-2);
    }
    SUBCASE("ties go to the smaller lambda") {
        std::vector<SweepCell> cells{cell(2e-2, 4, -15, true), cell(1e-2, 4, -15, true)};
        CHECK(select_lambda(cells) == 1e-2);
    }
    SUBCASE("a lambda unstable for one k is excluded") {
        std::vector<SweepCell> cells{cell(1e-3, 4, -30, true), cell(1e-3, 8, -30, false), cell(1e-2, 4, -10, true),
                                     cell(1e-2, 8, -10, true)};
        CHECK(select_lambda(cells) == 1e-2);
    }
    SUBCASE("infeasible") {
        std::vector<SweepCell> cells{cell(1e-3, 4, -5, false), cell(1e-2, 8, -3, false)};
        CHECK_THROWS_AS(select_lambda(cells), SelectionInfeasible);
        try {
            select_lambda(cells);
        } catch (const SelectionInfeasible& e) {
            CHECK(std::string(e.what()).find("k=8") != std::string::npos);
        }
    }
}

TEST_CASE("repa_sweep: singleton grid") {
    ExperimentConfig c = tiny_config();
    c.lambda_grid = {0.0};
    c.k_set = {4, 8};
    const SweepResult r = repa_sweep(c, 2);
    REQUIRE(r.cells.size() == 2);
    REQUIRE(r.selected_lambda.has_value());
    CHECK(*r.selected_lambda == 0.0);
    CHECK(r.diagnostic.empty());
}

TEST_CASE("compare_algorithms: curve counts, labels and degenerate sweep") {
    ExperimentConfig c = tiny_config();
    const auto by_t = compare_algorithms(c, Axis::T, 2);
    CHECK(by_t.size() == 12);
    CHECK(by_t.front().label == "LMS_T200");
    CHECK(by_t.back().label == "SLMS_RL1_T600");

    c.k_set = {2, 4, 8, 16};
    const auto by_k = compare_algorithms(c, Axis::K, 2);
    CHECK(by_k.size() == 16);
    CHECK(by_k[4].label == "LMS_K4");

    c.algorithms = {Algorithm::SLMS};
    c.t_set = {400.0};
    const auto single = compare_algorithms(c, Axis::T, 1);
    REQUIRE(single.size() == 1);
    RunSpec spec = make_run_spec(c, Algorithm::SLMS);
    MonteCarloOptions opt;
    opt.runs = c.runs;
    opt.root_seed = c.root_seed;
    opt.stream_key = stream_key_for(c, "SLMS_T400|lambda=0.0080000000000000002|K=8|T=400");
    CHECK(single.front().curve.mse_db == monte_carlo(spec, opt).mse_db);
}

TEST_CASE("common random numbers share substreams across labels") {
    ExperimentConfig c;
    CHECK(stream_key_for(c, "a") != stream_key_for(c, "b"));
    c.common_random_numbers = true;
    CHECK(stream_key_for(c, "a") == stream_key_for(c, "b"));

    // With shared draws, LMS_RL1 at lambda = 0 reproduces LMS exactly.
    c = tiny_config();
    c.common_random_numbers = true;
    c.lambda = 0.0;
    c.algorithms = {Algorithm::LMS, Algorithm::LMS_RL1};
    c.t_set = {400.0};
    const auto curves = compare_algorithms(c, Axis::T, 1);
    CHECK(curves[0].curve.mse_db == curves[1].curve.mse_db);
}

TEST_CASE("statistical: robustness ordering at the reference setting") {
    ExperimentConfig c;
    c.common_random_numbers = true;
    c.algorithms = {Algorithm::SLMS, Algorithm::LMS_RL1, Algorithm::SLMS_RL1};
    c.t_set = {400.0};
    const auto curves = compare_algorithms(c, Axis::T, 4);
    const double slms = steady_state(curves[0].curve), lms_rl1 = steady_state(curves[1].curve),
                 slms_rl1 = steady_state(curves[2].curve);
    CHECK(slms_rl1 < slms);
    CHECK(slms_rl1 < lms_rl1);
}

TEST_CASE("statistical: sparsity gain does not reverse as K grows") {
    ExperimentConfig c;
    c.common_random_numbers = true;
    c.algorithms = {Algorithm::SLMS, Algorithm::SLMS_RL1};
    c.k_set = {2, 4, 8, 16};
    const auto curves = compare_algorithms(c, Axis::K, 4);
    REQUIRE(curves.size() == 8);
    for (std::size_t i = 0; i < curves.size(); i += 2) {
        CAPTURE(curves[i].label);
        CHECK(steady_state(curves[i].curve) - steady_state(curves[i + 1].curve) >= -1.0);
    }
}

#include "slmsrl1/harness.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

namespace slmsrl1 {
namespace {

std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}

std::string fmt_exact(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

MonteCarloOptions options_for(const ExperimentConfig& config, const std::string& label, unsigned threads) {
    MonteCarloOptions opt;
    opt.runs = config.runs;
    opt.root_seed = config.root_seed;
    opt.stream_key = stream_key_for(config, label);
    opt.threads = threads;
    opt.exclude_diverged = config.exclude_diverged;
    return opt;
}

}  // namespace

void RunSpec::validate() const {
    try {
        (void)filter_config();
        (void)noise_params();
    } catch (const std::invalid_argument& e) {
        throw ConfigError(e.what());
    }
    if (n < 1) throw ConfigError("n must be >= 1");
    if (k < 1 || k > n) throw ConfigError("k must lie in [1, n]");
    if (iterations < 1) throw ConfigError("iterations must be >= 1");
}

RunSpec make_run_spec(const ExperimentConfig& c, Algorithm algorithm) {
    RunSpec s;
    s.algorithm = algorithm;
    s.mu = c.mu;
    s.lambda = c.lambda;
    s.delta_r = c.delta_r;
    s.n = c.n;
    s.k = c.k;
    s.snr_db = c.snr_db;
    s.phi = c.phi;
    s.t = c.t;
    s.iterations = c.iterations;
    s.normalize_channel = c.normalize_channel_per_run;
    return s;
}

MseTrace run_once(const RunSpec& spec, std::uint64_t seed, const simd::KernelTable& kernels) {
    spec.validate();

    Engine rng = make_engine(seed);
    const ChannelRealization channel = generate_channel(spec.n, spec.k, rng, spec.normalize_channel);
    const TrainingSignal training = generate_training(spec.iterations, rng);
    GmmSampler noise(spec.noise_params());

    const RegressorWindow window(training, spec.n);
    AdaptiveFilter filter(spec.filter_config(), spec.n, kernels);

    const double* truth = channel.taps.data();
    // Same reduction as the per-step distance, so values[0] is exactly 1.
    const double energy = kernels.sq_dist(filter.estimate().data(), truth, spec.n);

    MseTrace trace;
    trace.values.resize(spec.iterations);
    for (std::size_t it = 0; it < spec.iterations; ++it) {
        const double dev = kernels.sq_dist(filter.estimate().data(), truth, spec.n) / energy;
        if (!std::isfinite(dev)) {
            trace.diverged = true;
            trace.diverged_at = it;
            const double last = it > 0 ? trace.values[it - 1] : std::numeric_limits<double>::max();
            std::fill(trace.values.begin() + static_cast<std::ptrdiff_t>(it), trace.values.end(), last);
            break;
        }
        trace.values[it] = dev;

        const std::span<const double> x = window.at(it);
        const double d = kernels.dot(truth, x.data(), spec.n) + noise(rng);
        filter.update(x, d);
    }
    return trace;
}

ChannelRealization run_channel(const RunSpec& spec, std::uint64_t seed) {
    spec.validate();
    Engine rng = make_engine(seed);
    return generate_channel(spec.n, spec.k, rng, spec.normalize_channel);
}

AggregateCurve monte_carlo(const RunSpec& spec, const MonteCarloOptions& options) {
    if (options.runs < 1) throw ConfigError("runs must be >= 1");
    spec.validate();

    const auto seed_of = [&](std::size_t run) {
        return options.seed_override ? options.seed_override(run)
                                     : substream_seed(options.root_seed, options.stream_key, run);
    };

    std::vector<MseTrace> traces(options.runs);
    const simd::KernelTable& kernels = simd::active_kernels();
    const unsigned workers =
        std::max(1u, std::min<unsigned>(options.threads, static_cast<unsigned>(options.runs)));

    if (workers == 1) {
        for (std::size_t r = 0; r < options.runs; ++r) traces[r] = run_once(spec, seed_of(r), kernels);
    } else {
        std::atomic<std::size_t> next{0};
        std::exception_ptr failure;
        std::mutex failure_mu;
        {
            std::vector<std::jthread> pool;
            pool.reserve(workers);
            for (unsigned w = 0; w < workers; ++w) {
                pool.emplace_back([&] {
                    for (std::size_t r = next++; r < options.runs; r = next++) {
                        try {
                            traces[r] = run_once(spec, seed_of(r), kernels);
                        } catch (...) {
                            std::lock_guard lock(failure_mu);
                            if (!failure) failure = std::current_exception();
                        }
                    }
                });
            }
        }
        if (failure) std::rethrow_exception(failure);
    }
    return aggregate(traces, options.exclude_diverged);
}

bool is_stable(const AggregateCurve& curve) {
    if (curve.mse_db.empty()) return false;
    for (double v : curve.mse_db)
        if (!std::isfinite(v)) return false;
    return curve.mse_db.back() <= curve.mse_db.front();
}

double select_lambda(std::span<const SweepCell> cells) {
    if (cells.empty()) throw SelectionInfeasible("select_lambda: no sweep cells");

    std::vector<std::size_t> ks;
    std::vector<double> lambdas;
    for (const SweepCell& c : cells) {
        ks.push_back(c.k);
        lambdas.push_back(c.lambda);
    }
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    std::sort(lambdas.begin(), lambdas.end());
    lambdas.erase(std::unique(lambdas.begin(), lambdas.end()), lambdas.end());

    std::optional<double> best;
    double best_worst = std::numeric_limits<double>::infinity();
    for (double lambda : lambdas) {
        bool feasible = true;
        std::size_t covered = 0;
        double worst = -std::numeric_limits<double>::infinity();
        for (const SweepCell& c : cells) {
            if (c.lambda != lambda) continue;
            ++covered;
            feasible = feasible && c.stable;
            worst = std::max(worst, c.steady_state_db);
        }
        if (!feasible || covered < ks.size()) continue;
        if (!best || worst < best_worst) {
            best = lambda;
            best_worst = worst;
        }
    }
    if (best) return *best;

    std::ostringstream msg;
    msg << "no lambda is stable for every k:";
    for (const SweepCell& c : cells)
        msg << "\n  lambda=" << fmt_g(c.lambda) << " k=" << c.k << " steady_state_db=" << fmt_g(c.steady_state_db)
            << ' ' << (c.stable ? "stable" : "unstable");
    throw SelectionInfeasible(msg.str());
}

std::uint64_t stream_key_for(const ExperimentConfig& config, const std::string& label) {
    return config.common_random_numbers ? fnv1a("common") : fnv1a(label);
}

SweepResult repa_sweep(const ExperimentConfig& config, unsigned threads) {
    config.validate();
    SweepResult result;
    for (double lambda : config.lambda_grid) {
        for (std::size_t k : config.k_set) {
            RunSpec spec = make_run_spec(config, Algorithm::SLMS_RL1);
            spec.lambda = lambda;
            spec.k = k;
            const std::string label = "sweep|lambda=" + fmt_exact(lambda) + "|K=" + std::to_string(k);

            SweepCell cell;
            cell.lambda = lambda;
            cell.k = k;
            cell.curve = monte_carlo(spec, options_for(config, label, threads));
            cell.steady_state_db = steady_state(cell.curve, config.tail_fraction);
            cell.stable = is_stable(cell.curve);
            result.cells.push_back(std::move(cell));
        }
    }
    try {
        result.selected_lambda = select_lambda(result.cells);
    } catch (const SelectionInfeasible& e) {
        result.diagnostic = e.what();
    }
    return result;
}

std::vector<LabeledCurve> compare_algorithms(const ExperimentConfig& config, Axis axis, unsigned threads) {
    config.validate();
    std::vector<double> values;
    if (axis == Axis::T)
        values = config.t_set;
    else
        for (std::size_t k : config.k_set) values.push_back(static_cast<double>(k));

    std::vector<LabeledCurve> out;
    for (double v : values) {
        for (Algorithm a : config.algorithms) {
            RunSpec spec = make_run_spec(config, a);
            std::string label(to_string(a));
            if (axis == Axis::T) {
                spec.t = v;
                label += "_T" + fmt_g(v);
            } else {
                spec.k = static_cast<std::size_t>(v);
                label += "_K" + std::to_string(spec.k);
            }
            const std::string key_label = label + "|lambda=" + fmt_exact(spec.lambda) + "|K=" +
                                          std::to_string(spec.k) + "|T=" + fmt_exact(spec.t);
            out.push_back({label, a, v, monte_carlo(spec, options_for(config, key_label, threads))});
        }
    }
    return out;
}

}  // namespace slmsrl1

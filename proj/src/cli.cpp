#include "slmsrl1/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <ostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "slmsrl1/config.hpp"
#include "slmsrl1/harness.hpp"
#include "slmsrl1/output.hpp"
#include "slmsrl1/selftest.hpp"

namespace slmsrl1 {
namespace {

struct Invocation {
    ExperimentConfig config;
    std::vector<std::string> algorithm_names{"LMS", "SLMS", "LMS_RL1", "SLMS_RL1"};
    bool paper_scale = false;
    unsigned threads = std::max(1u, std::thread::hardware_concurrency());
    std::string kernel;
    std::string out_dir;
    std::string axis;
    bool dump_channels = false;
};

void add_experiment_options(CLI::App& app, Invocation& inv) {
    ExperimentConfig& c = inv.config;
    const std::string g = "Experiment";
    app.add_option("--n", c.n, "Channel length N")->capture_default_str()->group(g);
    app.add_option("--k_set", c.k_set, "Sparsities swept by sweep / compare --axis K")
        ->delimiter(',')->capture_default_str()->group(g);
    app.add_option("--snr_db", c.snr_db, "Received SNR in dB")->capture_default_str()->group(g);
    app.add_option("--phi", c.phi, "GMM mixture parameter")->capture_default_str()->group(g);
    app.add_option("--t_set", c.t_set, "Impulsive strengths swept by compare --axis T")
        ->delimiter(',')->capture_default_str()->group(g);
    app.add_option("--mu", c.mu, "Step size")->capture_default_str()->group(g);
    app.add_option("--delta_r", c.delta_r, "Reweighting threshold")->capture_default_str()->group(g);
    app.add_option("--lambda_grid", c.lambda_grid, "Regularization values tried by sweep")
        ->delimiter(',')->group(g);
    app.add_option("--algorithms", inv.algorithm_names, "Algorithms for run / compare")
        ->delimiter(',')
        ->check(CLI::IsMember({"LMS", "SLMS", "LMS_RL1", "SLMS_RL1"}))
        ->capture_default_str()
        ->group(g);
    app.add_option("--iterations", c.iterations, "Iterations per run")->capture_default_str()->group(g);
    app.add_option("--runs", c.runs, "Monte Carlo runs per curve")->capture_default_str()->group(g);
    app.add_option("--root_seed", c.root_seed, "Root seed")->capture_default_str()->group(g);
    app.add_option("--tail_fraction", c.tail_fraction, "Tail fraction for steady-state MSE")
        ->capture_default_str()->group(g);
    app.add_flag("--exclude_diverged,--exclude-diverged", c.exclude_diverged,
                 "Leave diverged runs out of the averages")->group(g);
    app.add_flag("--normalize_channel_per_run", c.normalize_channel_per_run,
                 "Rescale every channel realization to unit norm")->group(g);
    app.add_option("--lambda", c.lambda, "Fixed lambda for run / compare")->capture_default_str()->group(g);
    app.add_option("--k", c.k, "Fixed sparsity for run / compare --axis T")->capture_default_str()->group(g);
    app.add_option("--t", c.t, "Fixed impulsive strength for run / sweep / compare --axis K")
        ->capture_default_str()->group(g);
    app.add_flag("--common_random_numbers,--common-random-numbers", c.common_random_numbers,
                 "Share channel, training and noise draws across curves")->group(g);
}

std::string csv_of(const std::vector<NamedCurve>& curves) {
    std::ostringstream os;
    write_curves_csv(os, curves);
    return os.str();
}

std::string echo_of(const ExperimentConfig& config) {
    std::ostringstream os;
    write_config(os, config);
    return os.str();
}

std::string g4(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.4g", v);
    return buf;
}

int do_run(const Invocation& inv, std::ostream& out) {
    const ExperimentConfig& c = inv.config;
    std::vector<AggregateCurve> curves;
    std::vector<NamedCurve> named;
    curves.reserve(c.algorithms.size());
    for (Algorithm a : c.algorithms) {
        const RunSpec spec = make_run_spec(c, a);
        MonteCarloOptions opt;
        opt.runs = c.runs;
        opt.root_seed = c.root_seed;
        opt.stream_key = stream_key_for(c, "run|" + std::string(to_string(a)));
        opt.threads = inv.threads;
        opt.exclude_diverged = c.exclude_diverged;
        curves.push_back(monte_carlo(spec, opt));
        out << to_string(a) << " steady_state_db=" << g4(steady_state(curves.back(), c.tail_fraction))
            << " diverged_runs=" << curves.back().diverged_runs << '\n';
    }
    for (std::size_t i = 0; i < curves.size(); ++i) named.push_back({std::string(to_string(c.algorithms[i])), &curves[i]});
    write_file(inv.out_dir, "run.csv", csv_of(named));

    if (inv.dump_channels) {
        // Channels depend only on the substream, so they are reproduced
        // for the first algorithm's streams.
        const RunSpec spec = make_run_spec(c, c.algorithms.front());
        const auto key = stream_key_for(c, "run|" + std::string(to_string(c.algorithms.front())));
        std::ostringstream os;
        os.precision(17);
        os << "run_id,tap_index,value\n";
        for (std::size_t r = 0; r < c.runs; ++r)
            write_channel_rows(os, r, run_channel(spec, substream_seed(c.root_seed, key, r)));
        write_file(inv.out_dir, "channels.csv", os.str());
    }
    return kExitOk;
}

int do_sweep(const Invocation& inv, std::ostream& out, std::ostream& err) {
    const ExperimentConfig& c = inv.config;
    const SweepResult result = repa_sweep(c, inv.threads);

    for (std::size_t k : c.k_set) {
        std::vector<NamedCurve> named;
        for (const SweepCell& cell : result.cells)
            if (cell.k == k) {
                char label[48];
                std::snprintf(label, sizeof label, "lambda_%g", cell.lambda);
                named.push_back({label, &cell.curve});
            }
        write_file(inv.out_dir, "sweep_K" + std::to_string(k) + ".csv", csv_of(named));
    }
    std::ostringstream sel;
    write_selection(sel, result);
    write_file(inv.out_dir, "selection.txt", sel.str());
    out << sel.str();

    if (!result.selected_lambda) {
        err << result.diagnostic << '\n';
        return kExitSelectionInfeasible;
    }
    return kExitOk;
}

int do_compare(const Invocation& inv, std::ostream& out) {
    const Axis axis = inv.axis == "T" ? Axis::T : Axis::K;
    const auto curves = compare_algorithms(inv.config, axis, inv.threads);
    std::vector<NamedCurve> named;
    for (const LabeledCurve& lc : curves) {
        named.push_back({lc.label, &lc.curve});
        out << lc.label << " steady_state_db=" << g4(steady_state(lc.curve, inv.config.tail_fraction))
            << " diverged_runs=" << lc.curve.diverged_runs << '\n';
    }
    write_file(inv.out_dir, "compare_" + inv.axis + ".csv", csv_of(named));
    return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Sparse sign-LMS channel estimation experiments"};
    app.name("slms_rl1");
    Invocation inv;

    app.set_config("--config", "", "Read options from a key = value config file");
    add_experiment_options(app, inv);
    app.add_flag("--paper-scale", inv.paper_scale, "Use 1000 Monte Carlo runs per curve");
    app.add_option("--threads", inv.threads, "Worker threads (does not affect results)")
        ->check(CLI::PositiveNumber)->capture_default_str();
    app.add_option("--kernel", inv.kernel, "Force a kernel ISA: scalar, avx2 or neon");
    app.add_option("--out", inv.out_dir, "Output directory (default results/<subcommand>)");

    auto* run = app.add_subcommand("run", "Monte Carlo curves at one (lambda, k, t) setting");
    run->add_flag("--dump-channels", inv.dump_channels, "Also write channels.csv");
    auto* sweep = app.add_subcommand("sweep", "Lambda sweep over k_set and lambda selection");
    auto* compare = app.add_subcommand("compare", "Algorithm comparison across T or K");
    compare->add_option("--axis", inv.axis, "Swept axis")->required()->check(CLI::IsMember({"T", "K"}));
    auto* selftest = app.add_subcommand("selftest", "Run the built-in invariant checks");
    for (CLI::App* sub : {run, sweep, compare, selftest}) sub->fallthrough();
    app.require_subcommand(1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, out, err);
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kExitInvalidConfig;
    }

    if (!inv.kernel.empty()) {
        simd::Isa isa{};
        if (!simd::parse_isa(inv.kernel, isa) || !simd::select_kernels(isa)) {
            err << "error: kernel '" << inv.kernel << "' is not available\n";
            return kExitInvalidConfig;
        }
    }

    if (selftest->parsed()) {
        out << "kernel: " << simd::isa_name(simd::active_kernels().isa) << '\n';
        return run_selftest(out) == 0 ? kExitOk : kExitFailure;
    }

    ExperimentConfig& c = inv.config;
    c.algorithms.clear();
    for (const std::string& name : inv.algorithm_names) c.algorithms.push_back(*parse_algorithm(name));
    if (inv.paper_scale) c.runs = 1000;
    try {
        c.validate();
    } catch (const ConfigError& e) {
        err << "error: invalid config: " << e.what() << '\n';
        return kExitInvalidConfig;
    }

    const std::string sub = run->parsed() ? "run" : sweep->parsed() ? "sweep" : "compare";
    if (inv.out_dir.empty()) inv.out_dir = (std::filesystem::path("results") / sub).string();

    try {
        write_file(inv.out_dir, "config.echo", echo_of(c));
        if (run->parsed()) return do_run(inv, out);
        if (sweep->parsed()) return do_sweep(inv, out, err);
        return do_compare(inv, out);
    } catch (const ConfigError& e) {
        err << "error: invalid config: " << e.what() << '\n';
        return kExitInvalidConfig;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFailure;
    }
}

}  // namespace slmsrl1

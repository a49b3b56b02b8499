#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "slmsrl1/channel.hpp"
#include "slmsrl1/config.hpp"
#include "slmsrl1/filters.hpp"
#include "slmsrl1/metrics.hpp"
#include "slmsrl1/noise.hpp"

namespace slmsrl1 {

/// One fully specified simulation setting.
struct RunSpec {
    Algorithm algorithm = Algorithm::SLMS_RL1;
    double mu = 0.01;
    double lambda = 8e-3;
    double delta_r = 0.05;
    std::size_t n = 80;
    std::size_t k = 8;
    double snr_db = 10.0;
    double phi = 0.1;
    double t = 400.0;
    std::size_t iterations = 20000;
    bool normalize_channel = false;

    FilterConfig filter_config() const { return FilterConfig(algorithm, mu, lambda, delta_r); }
    GmmParams noise_params() const { return GmmParams(phi, sigma_from_snr(snr_db), t); }

    /// Throws ConfigError if any parameter is out of range.
    void validate() const;
};

/// RunSpec for `algorithm` with every other value taken from `config`
/// (lambda, k and t are the fixed ones).
RunSpec make_run_spec(const ExperimentConfig& config, Algorithm algorithm);

/// One Monte Carlo run. The substream seeded by `seed` is consumed in a
/// fixed order: channel (support, then taps), the whole training sequence,
/// then per iteration one noise draw (component pick, Gaussian).
///
/// values[i] is the deviation of the estimate before update i, so values[0]
/// is 1 for the zero start. A non-finite estimate ends the run with the
/// diverged flag set.
MseTrace run_once(const RunSpec& spec, std::uint64_t seed,
                  const simd::KernelTable& kernels = simd::active_kernels());

/// The channel run_once(spec, seed) estimates.
ChannelRealization run_channel(const RunSpec& spec, std::uint64_t seed);

struct MonteCarloOptions {
    std::size_t runs = 1;
    std::uint64_t root_seed = 1;
    /// Separates substream families; usually a hash of the curve label.
    std::uint64_t stream_key = 0;
    unsigned threads = 1;
    bool exclude_diverged = false;
    /// Test hook: replaces substream_seed(root_seed, stream_key, run).
    std::function<std::uint64_t(std::size_t run)> seed_override;
};

/// Runs `runs` independent run_once calls and aggregates them. The result
/// does not depend on `threads`.
AggregateCurve monte_carlo(const RunSpec& spec, const MonteCarloOptions& options);

/// Stable iff the curve is finite everywhere and ends no higher than it starts.
bool is_stable(const AggregateCurve& curve);

struct SweepCell {
    double lambda = 0.0;
    std::size_t k = 0;
    AggregateCurve curve;
    double steady_state_db = 0.0;
    bool stable = false;
};

struct SweepResult {
    std::vector<SweepCell> cells;  // lambda-major, k-minor
    std::optional<double> selected_lambda;
    std::string diagnostic;  // set when no lambda is stable for every k
};

struct SelectionInfeasible : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Among lambdas stable for every k present in `cells`, the one with the
/// lowest worst-case steady-state MSE; ties go to the smaller lambda.
/// Throws SelectionInfeasible with a per-cell verdict listing otherwise.
double select_lambda(std::span<const SweepCell> cells);

/// Runs SLMS_RL1 for every (lambda_grid, k_set) pair at the fixed t and
/// applies select_lambda.
SweepResult repa_sweep(const ExperimentConfig& config, unsigned threads = 1);

enum class Axis { T, K };

struct LabeledCurve {
    std::string label;
    Algorithm algorithm;
    double axis_value;
    AggregateCurve curve;
};

/// Every algorithm at the fixed lambda across t_set (Axis::T, k fixed) or
/// k_set (Axis::K, t fixed). Ordered axis-value-major.
std::vector<LabeledCurve> compare_algorithms(const ExperimentConfig& config, Axis axis, unsigned threads = 1);

/// Substream key of a labeled curve; identical for every label under
/// common random numbers.
std::uint64_t stream_key_for(const ExperimentConfig& config, const std::string& label);

}  // namespace slmsrl1

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <vector>

#include "slmsrl1/filters.hpp"

namespace slmsrl1 {

struct ConfigError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Logarithmic grid of `points` values from `lo` to `hi`, merged with the
/// extra values, sorted and deduplicated.
std::vector<double> log_grid(double lo, double hi, std::size_t points, const std::vector<double>& extra = {});

/// 12 log-spaced points over [1e-4, 1e-1] plus 8e-3, 4e-2 and 8e-2.
std::vector<double> default_lambda_grid();

/// Everything an experiment depends on. Field names double as config-file
/// keys and CLI flags. Defaults reproduce the reference simulation setup:
/// N = 80, SNR = 10 dB, mu = 0.01, delta_r = 0.05, phi = 0.1.
struct ExperimentConfig {
    std::size_t n = 80;
    std::vector<std::size_t> k_set{4, 8, 16};
    double snr_db = 10.0;
    double phi = 0.1;
    std::vector<double> t_set{200.0, 400.0, 600.0};
    double mu = 0.01;
    double delta_r = 0.05;
    std::vector<double> lambda_grid = default_lambda_grid();
    std::vector<Algorithm> algorithms{Algorithm::LMS, Algorithm::SLMS, Algorithm::LMS_RL1, Algorithm::SLMS_RL1};
    std::size_t iterations = 20000;
    std::size_t runs = 100;
    std::uint64_t root_seed = 1;
    double tail_fraction = 0.1;
    bool exclude_diverged = false;
    bool normalize_channel_per_run = false;

    // Values held fixed where an experiment does not sweep them.
    double lambda = 8e-3;
    std::size_t k = 8;
    double t = 400.0;
    bool common_random_numbers = false;

    /// Throws ConfigError describing the first violated constraint.
    void validate() const;
};

/// Writes the resolved config in the same key = value format the CLI reads.
void write_config(std::ostream& os, const ExperimentConfig& config);

}  // namespace slmsrl1

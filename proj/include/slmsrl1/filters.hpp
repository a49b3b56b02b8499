#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "slmsrl1/simd/kernels.hpp"

namespace slmsrl1 {

enum class Algorithm { LMS, SLMS, LMS_RL1, SLMS_RL1 };

inline constexpr Algorithm kAllAlgorithms[] = {Algorithm::LMS, Algorithm::SLMS, Algorithm::LMS_RL1,
                                               Algorithm::SLMS_RL1};

std::string_view to_string(Algorithm algorithm) noexcept;
std::optional<Algorithm> parse_algorithm(std::string_view text) noexcept;

/// True for the sign-error variants (SLMS, SLMS_RL1).
constexpr bool uses_sign_error(Algorithm a) noexcept {
    return a == Algorithm::SLMS || a == Algorithm::SLMS_RL1;
}

/// True for the variants carrying the reweighted zero attractor.
constexpr bool uses_reweighting(Algorithm a) noexcept {
    return a == Algorithm::LMS_RL1 || a == Algorithm::SLMS_RL1;
}

/// Update rule and its hyperparameters. The zero-attractor strength
/// rho = mu * lambda is always derived, never stored.
class FilterConfig {
public:
    /// Throws std::invalid_argument unless mu > 0, delta_r > 0 and lambda >= 0.
    FilterConfig(Algorithm algorithm, double mu, double lambda, double delta_r);

    Algorithm algorithm() const noexcept { return algorithm_; }
    double mu() const noexcept { return mu_; }
    double lambda() const noexcept { return lambda_; }
    double delta_r() const noexcept { return delta_r_; }
    double rho() const noexcept { return mu_ * lambda_; }

private:
    Algorithm algorithm_;
    double mu_;
    double lambda_;
    double delta_r_;
};

/// Estimate w(n) together with w(n-1); the reweighting reads the older one.
struct FilterState {
    std::vector<double> current;
    std::vector<double> previous;

    /// Fresh filter: current = previous = 0.
    static FilterState zeros(std::size_t n);

    std::size_t size() const noexcept { return current.size(); }
};

/// One training pair: regressor x(n) (newest sample first) and observation d(n).
struct Sample {
    std::span<const double> x;
    double d;
};

/// Sign with sgn(0) = 0.
constexpr double sgn(double v) noexcept {
    return static_cast<double>(v > 0.0) - static_cast<double>(v < 0.0);
}

/// e(n) = d(n) - w(n)^T x(n). Throws std::invalid_argument on a length mismatch.
double error(const FilterState& state, const Sample& sample);

/// Reweighting vector f_i = 1 / (delta_r + |previous_i|); every entry is > 0.
/// Throws std::invalid_argument if delta_r <= 0.
std::vector<double> reweight(std::span<const double> previous, double delta_r);

/// G(n) = |e(n)| + lambda * sum_i f_i |w_i(n)| with f computed from state.previous.
double cost(const FilterState& state, const Sample& sample, const FilterConfig& config);

/// Same cost with caller-supplied weights, evaluated at an arbitrary estimate.
double cost_with_weights(std::span<const double> estimate, const Sample& sample, double lambda,
                         std::span<const double> weights);

/// One adaptation step. The returned state has previous == state.current.
///
/// Throws std::invalid_argument on length mismatch and std::domain_error if
/// any input value is non-finite.
FilterState step(const FilterState& state, const Sample& sample, const FilterConfig& config);

/// In-place filter for long runs: owns its buffers, performs no validation
/// beyond lengths and never allocates after construction.
class AdaptiveFilter {
public:
    AdaptiveFilter(const FilterConfig& config, std::size_t n,
                   const simd::KernelTable& kernels = simd::active_kernels());

    /// Advances one step and returns the a-priori error e(n).
    double update(std::span<const double> x, double d);

    std::span<const double> estimate() const noexcept { return state_.current; }
    const FilterState& state() const noexcept { return state_; }
    const FilterConfig& config() const noexcept { return config_; }

private:
    FilterConfig config_;
    const simd::KernelTable* kernels_;
    FilterState state_;
    std::vector<double> scratch_;
};

}  // namespace slmsrl1

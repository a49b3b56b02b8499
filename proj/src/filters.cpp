#include "slmsrl1/filters.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace slmsrl1 {
namespace {

void require_same_length(std::size_t a, std::size_t b, const char* what) {
    if (a != b)
        throw std::invalid_argument(std::string(what) + ": length mismatch (" + std::to_string(a) +
                                    " vs " + std::to_string(b) + ")");
}

bool all_finite(std::span<const double> v) {
    return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

// Writes w(n+1) into `out` and returns e(n).
double advance(const simd::KernelTable& k, const FilterConfig& cfg, const double* cur,
               const double* prev, const double* x, double d, double* out, std::size_t n) {
    const double e = d - k.dot(cur, x, n);
    const double drive = uses_sign_error(cfg.algorithm()) ? sgn(e) : e;
    const double gain = cfg.mu() * drive;
    if (uses_reweighting(cfg.algorithm()))
        k.update_rl1(out, cur, prev, x, gain, cfg.rho(), cfg.delta_r(), n);
    else
        k.axpy(out, cur, x, gain, n);
    return e;
}

}  // namespace

std::string_view to_string(Algorithm algorithm) noexcept {
    switch (algorithm) {
        case Algorithm::LMS: return "LMS";
        case Algorithm::SLMS: return "SLMS";
        case Algorithm::LMS_RL1: return "LMS_RL1";
        case Algorithm::SLMS_RL1: return "SLMS_RL1";
    }
    return "?";
}

std::optional<Algorithm> parse_algorithm(std::string_view text) noexcept {
    for (Algorithm a : kAllAlgorithms)
        if (text == to_string(a)) return a;
    return std::nullopt;
}

FilterConfig::FilterConfig(Algorithm algorithm, double mu, double lambda, double delta_r)
    : algorithm_(algorithm), mu_(mu), lambda_(lambda), delta_r_(delta_r) {
    if (!(mu > 0.0) || !std::isfinite(mu)) throw std::invalid_argument("mu must be positive and finite");
    if (!(lambda >= 0.0) || !std::isfinite(lambda))
        throw std::invalid_argument("lambda must be non-negative and finite");
    if (!(delta_r > 0.0) || !std::isfinite(delta_r))
        throw std::invalid_argument("delta_r must be positive and finite");
}

FilterState FilterState::zeros(std::size_t n) {
    return FilterState{std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)};
}

double error(const FilterState& state, const Sample& sample) {
    require_same_length(state.current.size(), sample.x.size(), "error");
    return sample.d - simd::active_kernels().dot(state.current.data(), sample.x.data(), sample.x.size());
}

std::vector<double> reweight(std::span<const double> previous, double delta_r) {
    if (!(delta_r > 0.0)) throw std::invalid_argument("reweight: delta_r must be positive");
    std::vector<double> f(previous.size());
    std::transform(previous.begin(), previous.end(), f.begin(),
                   [delta_r](double w) { return 1.0 / (delta_r + std::fabs(w)); });
    return f;
}

double cost_with_weights(std::span<const double> estimate, const Sample& sample, double lambda,
                         std::span<const double> weights) {
    require_same_length(estimate.size(), sample.x.size(), "cost");
    require_same_length(estimate.size(), weights.size(), "cost");
    const double e = sample.d - simd::active_kernels().dot(estimate.data(), sample.x.data(), estimate.size());
    double penalty = 0.0;
    for (std::size_t i = 0; i < estimate.size(); ++i) penalty += std::fabs(weights[i] * estimate[i]);
    return std::fabs(e) + lambda * penalty;
}

double cost(const FilterState& state, const Sample& sample, const FilterConfig& config) {
    require_same_length(state.current.size(), state.previous.size(), "cost");
    const auto f = reweight(state.previous, config.delta_r());
    return cost_with_weights(state.current, sample, config.lambda(), f);
}

FilterState step(const FilterState& state, const Sample& sample, const FilterConfig& config) {
    const std::size_t n = state.current.size();
    require_same_length(n, state.previous.size(), "step");
    require_same_length(n, sample.x.size(), "step");
    if (!std::isfinite(sample.d) || !all_finite(sample.x) || !all_finite(state.current) ||
        !all_finite(state.previous))
        throw std::domain_error("step: non-finite input (diverged run)");

    FilterState next{std::vector<double>(n), state.current};
    advance(simd::active_kernels(), config, state.current.data(), state.previous.data(),
            sample.x.data(), sample.d, next.current.data(), n);
    return next;
}

AdaptiveFilter::AdaptiveFilter(const FilterConfig& config, std::size_t n, const simd::KernelTable& kernels)
    : config_(config), kernels_(&kernels), state_(FilterState::zeros(n)), scratch_(n, 0.0) {}

double AdaptiveFilter::update(std::span<const double> x, double d) {
    const std::size_t n = scratch_.size();
    require_same_length(n, x.size(), "update");
    const double e = advance(*kernels_, config_, state_.current.data(), state_.previous.data(), x.data(), d,
                             scratch_.data(), n);
    // previous <- current, current <- scratch
    std::swap(state_.previous, state_.current);
    std::swap(state_.current, scratch_);
    return e;
}

}  // namespace slmsrl1

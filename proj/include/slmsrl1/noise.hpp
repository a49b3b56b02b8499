#pragma once

#include "slmsrl1/rng.hpp"

namespace slmsrl1 {

/// Two-component zero-mean Gaussian mixture
///   (1 - phi) N(0, sigma_n_sq) + phi N(0, T sigma_n_sq).
class GmmParams {
public:
    /// Throws std::invalid_argument unless 0 <= phi <= 1, sigma_n_sq > 0, T >= 1.
    GmmParams(double phi, double sigma_n_sq, double t);

    double phi() const noexcept { return phi_; }
    double sigma_n_sq() const noexcept { return sigma_n_sq_; }
    double t() const noexcept { return t_; }

    /// (1 - phi) sigma_n^2 + phi T sigma_n^2
    double analytic_variance() const noexcept;

private:
    double phi_;
    double sigma_n_sq_;
    double t_;
};

/// Base noise variance for a given SNR with unit training power: 10^(-snr/10).
double sigma_from_snr(double snr_db) noexcept;

struct LabeledDraw {
    double value;
    bool impulsive;  // drawn from the T * sigma_n^2 component
};

/// Per-draw Bernoulli(phi) component selection followed by a Gaussian draw.
/// Both variates are consumed on every call so streams stay aligned across
/// parameter settings.
class GmmSampler {
public:
    explicit GmmSampler(const GmmParams& params);

    double operator()(Engine& rng) { return draw_labeled(rng).value; }
    LabeledDraw draw_labeled(Engine& rng);

    const GmmParams& params() const noexcept { return params_; }

private:
    GmmParams params_;
    double base_sd_;
    double impulsive_sd_;
    std::bernoulli_distribution pick_;
    std::normal_distribution<double> unit_;
};

}  // namespace slmsrl1

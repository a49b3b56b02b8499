#include "slmsrl1/noise.hpp"

#include <cmath>
#include <stdexcept>

namespace slmsrl1 {

GmmParams::GmmParams(double phi, double sigma_n_sq, double t) : phi_(phi), sigma_n_sq_(sigma_n_sq), t_(t) {
    if (!(phi >= 0.0 && phi <= 1.0)) throw std::invalid_argument("phi must lie in [0, 1]");
    if (!(sigma_n_sq > 0.0) || !std::isfinite(sigma_n_sq))
        throw std::invalid_argument("sigma_n_sq must be positive and finite");
    if (!(t >= 1.0) || !std::isfinite(t)) throw std::invalid_argument("T must be >= 1 and finite");
}

double GmmParams::analytic_variance() const noexcept {
    return (1.0 - phi_) * sigma_n_sq_ + phi_ * t_ * sigma_n_sq_;
}

double sigma_from_snr(double snr_db) noexcept { return std::pow(10.0, -snr_db / 10.0); }

GmmSampler::GmmSampler(const GmmParams& params)
    : params_(params),
      base_sd_(std::sqrt(params.sigma_n_sq())),
      impulsive_sd_(std::sqrt(params.t() * params.sigma_n_sq())),
      pick_(params.phi()),
      unit_(0.0, 1.0) {}

LabeledDraw GmmSampler::draw_labeled(Engine& rng) {
    const bool impulsive = pick_(rng);
    const double g = unit_(rng);
    return {g * (impulsive ? impulsive_sd_ : base_sd_), impulsive};
}

}  // namespace slmsrl1

#include "slmsrl1/selftest.hpp"

#include <cmath>
#include <functional>
#include <ostream>
#include <string>
#include <vector>

#include "slmsrl1/channel.hpp"
#include "slmsrl1/filters.hpp"
#include "slmsrl1/harness.hpp"
#include "slmsrl1/noise.hpp"

namespace slmsrl1 {
namespace {

std::vector<double> gaussian(std::size_t n, Engine& rng, double sd = 1.0) {
    std::normal_distribution<double> g(0.0, sd);
    std::vector<double> v(n);
    for (double& x : v) x = g(rng);
    return v;
}

bool kernels_agree() {
    Engine rng(11);
    const auto& ref = simd::scalar_kernels();
    for (const simd::KernelTable* k : simd::available_kernels()) {
        for (std::size_t n : {1u, 3u, 4u, 7u, 8u, 80u, 81u}) {
            const auto a = gaussian(n, rng), b = gaussian(n, rng), c = gaussian(n, rng);
            std::vector<double> out_ref(n), out(n);
            ref.update_rl1(out_ref.data(), a.data(), b.data(), c.data(), 0.01, 1e-3, 0.05, n);
            k->update_rl1(out.data(), a.data(), b.data(), c.data(), 0.01, 1e-3, 0.05, n);
            if (out != out_ref) return false;
            double mag = 0.0;
            for (std::size_t i = 0; i < n; ++i) mag += std::fabs(a[i] * b[i]);
            if (std::fabs(k->dot(a.data(), b.data(), n) - ref.dot(a.data(), b.data(), n)) > 1e-12 * mag) return false;
        }
    }
    return true;
}

bool reduction_identities() {
    Engine rng(12);
    for (int seq = 0; seq < 10; ++seq) {
        FilterState a = FilterState::zeros(80), b = a, c = a, d = a;
        const FilterConfig slms(Algorithm::SLMS, 0.01, 0.0, 0.05), slms_rl1(Algorithm::SLMS_RL1, 0.01, 0.0, 0.05);
        const FilterConfig lms(Algorithm::LMS, 0.01, 0.0, 0.05), lms_rl1(Algorithm::LMS_RL1, 0.01, 0.0, 0.05);
        for (int i = 0; i < 200; ++i) {
            const auto x = gaussian(80, rng);
            const double dv = gaussian(1, rng)[0];
            a = step(a, {x, dv}, slms);
            b = step(b, {x, dv}, slms_rl1);
            c = step(c, {x, dv}, lms);
            d = step(d, {x, dv}, lms_rl1);
            if (a.current != b.current || c.current != d.current) return false;
        }
    }
    return true;
}

bool reweight_positive() {
    Engine rng(13);
    const auto w = gaussian(200, rng, 10.0);
    const auto f = reweight(w, 0.05);
    for (std::size_t i = 0; i < w.size(); ++i)
        if (!(f[i] > 0.0) || sgn(f[i] * w[i]) != sgn(w[i])) return false;
    return true;
}

bool state_chaining() {
    Engine rng(14);
    FilterState s{gaussian(16, rng), gaussian(16, rng)};
    const FilterConfig cfg(Algorithm::SLMS_RL1, 0.01, 0.1, 0.05);
    const auto x = gaussian(16, rng);
    const FilterState next = step(s, {x, 0.3}, cfg);
    return next.previous == s.current;
}

bool gmm_variance() {
    const GmmParams p(0.1, 0.1, 400.0);
    GmmSampler sampler(p);
    Engine rng(15);
    const int draws = 400000;
    double sum_sq = 0.0;
    for (int i = 0; i < draws; ++i) {
        const double z = sampler(rng);
        sum_sq += z * z;
    }
    return std::fabs(sum_sq / draws - p.analytic_variance()) < 0.03 * p.analytic_variance();
}

bool run_determinism() {
    RunSpec spec;
    spec.iterations = 500;
    return run_once(spec, 99).values == run_once(spec, 99).values;
}

bool sparsity_attraction() {
    const FilterConfig cfg(Algorithm::SLMS_RL1, 0.01, 0.5, 0.05);
    FilterState s{{0.3, -0.2, 0.0}, {0.1, -0.4, 0.2}};
    const std::vector<double> x(3, 0.0);
    const FilterState next = step(s, {x, 0.0}, cfg);
    for (std::size_t i = 0; i < 3; ++i) {
        const double shrink = cfg.rho() / (cfg.delta_r() + std::fabs(s.previous[i]));
        const double expected = s.current[i] - sgn(s.current[i]) * shrink;
        if (std::fabs(next.current[i] - expected) > 1e-15) return false;
    }
    return next.current[2] == 0.0;
}

}  // namespace

int run_selftest(std::ostream& os) {
    const std::vector<std::pair<std::string, std::function<bool()>>> checks{
        {"kernel equivalence (" + std::string(simd::isa_name(simd::active_kernels().isa)) + " active)",
         kernels_agree},
        {"reduction identities", reduction_identities},
        {"reweight positivity", reweight_positive},
        {"state chaining", state_chaining},
        {"sparsity attraction", sparsity_attraction},
        {"gmm variance", gmm_variance},
        {"run determinism", run_determinism},
    };
    int failures = 0;
    for (const auto& [name, check] : checks) {
        bool ok = false;
        try {
            ok = check();
        } catch (const std::exception& e) {
            os << "  error: " << e.what() << '\n';
        }
        os << (ok ? "PASS " : "FAIL ") << name << '\n';
        failures += ok ? 0 : 1;
    }
    return failures;
}

}  // namespace slmsrl1

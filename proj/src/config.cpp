#include "slmsrl1/config.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ostream>
#include <string>

namespace slmsrl1 {
namespace {

// Shortest of %.15g / %.17g that reads back to the same double.
std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.15g", v);
    if (std::strtod(buf, nullptr) != v) std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

template <class T, class F>
void write_list(std::ostream& os, const char* key, const std::vector<T>& values, F&& fmt) {
    os << key << " = [";
    for (std::size_t i = 0; i < values.size(); ++i) os << (i ? ", " : "") << fmt(values[i]);
    os << "]\n";
}

void check(bool ok, const std::string& message) {
    if (!ok) throw ConfigError(message);
}

}  // namespace

std::vector<double> log_grid(double lo, double hi, std::size_t points, const std::vector<double>& extra) {
    std::vector<double> grid;
    if (points == 1) grid.push_back(lo);
    for (std::size_t i = 0; points > 1 && i < points; ++i) {
        const double frac = static_cast<double>(i) / static_cast<double>(points - 1);
        grid.push_back(std::pow(10.0, std::log10(lo) + frac * (std::log10(hi) - std::log10(lo))));
    }
    grid.insert(grid.end(), extra.begin(), extra.end());
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
    return grid;
}

std::vector<double> default_lambda_grid() { return log_grid(1e-4, 1e-1, 12, {8e-3, 4e-2, 8e-2}); }

void ExperimentConfig::validate() const {
    check(n >= 1, "n must be >= 1");
    check(!k_set.empty(), "k_set must not be empty");
    for (std::size_t v : k_set) check(v >= 1 && v <= n, "every k_set value must lie in [1, n]");
    check(k >= 1 && k <= n, "k must lie in [1, n]");
    check(std::isfinite(snr_db), "snr_db must be finite");
    check(phi >= 0.0 && phi <= 1.0, "phi must lie in [0, 1]");
    check(!t_set.empty(), "t_set must not be empty");
    for (double v : t_set) check(v >= 1.0 && std::isfinite(v), "every t_set value must be >= 1");
    check(t >= 1.0 && std::isfinite(t), "t must be >= 1");
    check(mu > 0.0 && std::isfinite(mu), "mu must be positive");
    check(delta_r > 0.0 && std::isfinite(delta_r), "delta_r must be positive");
    check(lambda >= 0.0 && std::isfinite(lambda), "lambda must be non-negative");
    check(!lambda_grid.empty(), "lambda_grid must not be empty");
    for (std::size_t i = 0; i < lambda_grid.size(); ++i) {
        check(lambda_grid[i] >= 0.0 && std::isfinite(lambda_grid[i]), "lambda_grid values must be non-negative");
        check(i == 0 || lambda_grid[i] > lambda_grid[i - 1], "lambda_grid must be strictly increasing");
    }
    check(!algorithms.empty(), "algorithms must not be empty");
    check(iterations >= 1, "iterations must be >= 1");
    check(runs >= 1, "runs must be >= 1");
    check(tail_fraction > 0.0 && tail_fraction < 1.0, "tail_fraction must lie in (0, 1)");
}

void write_config(std::ostream& os, const ExperimentConfig& c) {
    auto as_num = [](double v) { return num(v); };
    auto as_size = [](std::size_t v) { return std::to_string(v); };
    auto as_alg = [](Algorithm a) { return "\"" + std::string(to_string(a)) + "\""; };
    auto as_bool = [](bool b) { return b ? "true" : "false"; };

    os << "n = " << c.n << '\n';
    write_list(os, "k_set", c.k_set, as_size);
    os << "snr_db = " << num(c.snr_db) << '\n';
    os << "phi = " << num(c.phi) << '\n';
    write_list(os, "t_set", c.t_set, as_num);
    os << "mu = " << num(c.mu) << '\n';
    os << "delta_r = " << num(c.delta_r) << '\n';
    write_list(os, "lambda_grid", c.lambda_grid, as_num);
    write_list(os, "algorithms", c.algorithms, as_alg);
    os << "iterations = " << c.iterations << '\n';
    os << "runs = " << c.runs << '\n';
    os << "root_seed = " << c.root_seed << '\n';
    os << "tail_fraction = " << num(c.tail_fraction) << '\n';
    os << "exclude_diverged = " << as_bool(c.exclude_diverged) << '\n';
    os << "normalize_channel_per_run = " << as_bool(c.normalize_channel_per_run) << '\n';
    os << "lambda = " << num(c.lambda) << '\n';
    os << "k = " << c.k << '\n';
    os << "t = " << num(c.t) << '\n';
    os << "common_random_numbers = " << as_bool(c.common_random_numbers) << '\n';
}

}  // namespace slmsrl1

#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace slmsrl1 {

/// Per-run normalized squared deviation ||w(n) - w||^2 / ||w||^2, one value
/// per iteration. A diverged run is flagged; from `diverged_at` on its
/// values repeat the last finite deviation.
struct MseTrace {
    std::vector<double> values;
    bool diverged = false;
    std::size_t diverged_at = 0;
};

/// 10 log10 of the run-averaged deviation, per iteration.
struct AggregateCurve {
    std::vector<double> mse_db;
    std::size_t runs_used = 0;
    std::size_t diverged_runs = 0;
};

inline constexpr double kDbFloor = -300.0;

/// Throws std::invalid_argument on a length mismatch or a zero-norm truth.
double run_deviation(std::span<const double> estimate, std::span<const double> truth);

/// Mean over runs first, then 10 log10; a zero mean maps to kDbFloor.
///
/// Per-iteration sums are taken over the values in sorted order, so the
/// result does not depend on the order of `traces`. With `exclude_diverged`,
/// flagged traces are left out; if none remain the curve is all NaN and
/// runs_used is 0. Throws std::invalid_argument for an empty list or
/// traces of different length.
AggregateCurve aggregate(std::span<const MseTrace> traces, bool exclude_diverged = false);

/// Mean of mse_db over the last ceil(tail_fraction * length) iterations.
/// Throws std::invalid_argument for an empty curve or tail_fraction outside (0, 1).
double steady_state(std::span<const double> mse_db, double tail_fraction = 0.1);

inline double steady_state(const AggregateCurve& curve, double tail_fraction = 0.1) {
    return steady_state(curve.mse_db, tail_fraction);
}

}  // namespace slmsrl1

#include "slmsrl1/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace slmsrl1 {

double run_deviation(std::span<const double> estimate, std::span<const double> truth) {
    if (estimate.size() != truth.size()) throw std::invalid_argument("run_deviation: length mismatch");
    double num = 0.0;
    double den = 0.0;
    for (std::size_t i = 0; i < truth.size(); ++i) {
        const double d = estimate[i] - truth[i];
        num += d * d;
        den += truth[i] * truth[i];
    }
    if (!(den > 0.0)) throw std::invalid_argument("run_deviation: truth has zero norm");
    return num / den;
}

AggregateCurve aggregate(std::span<const MseTrace> traces, bool exclude_diverged) {
    if (traces.empty()) throw std::invalid_argument("aggregate: no traces");
    const std::size_t length = traces.front().values.size();

    std::vector<const MseTrace*> used;
    used.reserve(traces.size());
    AggregateCurve curve;
    for (const MseTrace& t : traces) {
        if (t.values.size() != length) throw std::invalid_argument("aggregate: trace lengths differ");
        if (t.diverged) ++curve.diverged_runs;
        if (!(exclude_diverged && t.diverged)) used.push_back(&t);
    }
    curve.runs_used = used.size();
    if (used.empty()) {
        curve.mse_db.assign(length, std::numeric_limits<double>::quiet_NaN());
        return curve;
    }

    curve.mse_db.resize(length);
    std::vector<double> column(used.size());
    const double m = static_cast<double>(used.size());
    for (std::size_t n = 0; n < length; ++n) {
        for (std::size_t r = 0; r < used.size(); ++r) column[r] = used[r]->values[n];
        std::sort(column.begin(), column.end());
        double sum = 0.0;
        for (double v : column) sum += v;
        const double mean = sum / m;
        if (std::isnan(mean))
            curve.mse_db[n] = mean;
        else
            curve.mse_db[n] = mean > 0.0 ? std::max(kDbFloor, 10.0 * std::log10(mean)) : kDbFloor;
    }
    return curve;
}

double steady_state(std::span<const double> mse_db, double tail_fraction) {
    if (mse_db.empty()) throw std::invalid_argument("steady_state: empty curve");
    if (!(tail_fraction > 0.0 && tail_fraction < 1.0))
        throw std::invalid_argument("steady_state: tail_fraction must lie in (0, 1)");
    const auto len = static_cast<double>(mse_db.size());
    const auto tail = std::max<std::size_t>(1, static_cast<std::size_t>(std::ceil(tail_fraction * len)));
    double sum = 0.0;
    for (std::size_t i = mse_db.size() - tail; i < mse_db.size(); ++i) sum += mse_db[i];
    return sum / static_cast<double>(tail);
}

}  // namespace slmsrl1

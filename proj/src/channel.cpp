#include "slmsrl1/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <ostream>
#include <stdexcept>

namespace slmsrl1 {

ChannelRealization generate_channel(std::size_t n, std::size_t k, Engine& rng, bool normalize) {
    if (k < 1 || k > n) throw std::invalid_argument("generate_channel: need 1 <= k <= n");

    ChannelRealization ch;
    ch.taps.assign(n, 0.0);
    std::vector<std::size_t> positions(n);
    std::iota(positions.begin(), positions.end(), std::size_t{0});
    ch.support.reserve(k);
    std::sample(positions.begin(), positions.end(), std::back_inserter(ch.support), k, rng);

    std::normal_distribution<double> tap(0.0, std::sqrt(1.0 / static_cast<double>(k)));
    for (std::size_t idx : ch.support) {
        double v = tap(rng);
        while (v == 0.0) v = tap(rng);  // keep |support| == k exact
        ch.taps[idx] = v;
    }

    if (normalize) {
        double energy = 0.0;
        for (double v : ch.taps) energy += v * v;
        const double scale = 1.0 / std::sqrt(energy);
        for (double& v : ch.taps) v *= scale;
    }
    return ch;
}

TrainingSignal generate_training(std::size_t length, Engine& rng) {
    std::bernoulli_distribution coin(0.5);
    TrainingSignal s;
    s.samples.resize(length);
    for (double& v : s.samples) v = coin(rng) ? 1.0 : -1.0;
    return s;
}

std::vector<double> regressor_at(const TrainingSignal& signal, std::ptrdiff_t n, std::size_t filter_length) {
    if (n < 0) throw std::out_of_range("regressor_at: negative time index");
    if (static_cast<std::size_t>(n) >= signal.samples.size())
        throw std::out_of_range("regressor_at: time index past end of signal");
    std::vector<double> x(filter_length, 0.0);
    for (std::size_t j = 0; j < filter_length && static_cast<std::ptrdiff_t>(j) <= n; ++j)
        x[j] = signal.samples[static_cast<std::size_t>(n) - j];
    return x;
}

RegressorWindow::RegressorWindow(const TrainingSignal& signal, std::size_t filter_length)
    : steps_(signal.samples.size()), filter_length_(filter_length) {
    if (filter_length == 0) throw std::invalid_argument("RegressorWindow: zero filter length");
    buffer_.reserve(steps_ + filter_length - 1);
    buffer_.assign(signal.samples.rbegin(), signal.samples.rend());
    buffer_.resize(steps_ + filter_length - 1, 0.0);
}

void write_channel_rows(std::ostream& os, std::size_t run_id, const ChannelRealization& channel) {
    for (std::size_t idx : channel.support)
        os << run_id << ',' << idx << ',' << channel.taps[idx] << '\n';
}

}  // namespace slmsrl1

#pragma once

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include "slmsrl1/rng.hpp"

namespace slmsrl1 {

/// Ground-truth sparse FIR channel: exactly |support| nonzero taps.
struct ChannelRealization {
    std::vector<double> taps;
    std::vector<std::size_t> support;  // ascending

    std::size_t length() const noexcept { return taps.size(); }
    std::size_t sparsity() const noexcept { return support.size(); }
};

/// Draws k distinct tap positions uniformly from [0, n) and gives each an
/// independent N(0, 1/k) value, so E||w||^2 = 1. With `normalize`, the
/// realization is rescaled to ||w|| = 1 exactly.
/// Throws std::invalid_argument unless 1 <= k <= n.
ChannelRealization generate_channel(std::size_t n, std::size_t k, Engine& rng, bool normalize = false);

/// Equiprobable +/-1 training sequence (unit power).
struct TrainingSignal {
    std::vector<double> samples;
};

TrainingSignal generate_training(std::size_t length, Engine& rng);

/// x(n) = [s(n), s(n-1), ..., s(n-N+1)], reading s(m) = 0 for m < 0.
/// Throws std::out_of_range if n is past the end of the signal.
std::vector<double> regressor_at(const TrainingSignal& signal, std::ptrdiff_t n, std::size_t filter_length);

/// Zero-copy access to every regressor of a signal. The signal is stored
/// reversed behind N-1 zeros so each x(n) is a contiguous span.
class RegressorWindow {
public:
    RegressorWindow(const TrainingSignal& signal, std::size_t filter_length);

    std::span<const double> at(std::size_t n) const noexcept {
        return {buffer_.data() + (steps_ - 1 - n), filter_length_};
    }
    std::size_t steps() const noexcept { return steps_; }

private:
    std::vector<double> buffer_;
    std::size_t steps_;
    std::size_t filter_length_;
};

/// Appends rows `run_id,tap_index,value` for the nonzero taps.
void write_channel_rows(std::ostream& os, std::size_t run_id, const ChannelRealization& channel);

}  // namespace slmsrl1

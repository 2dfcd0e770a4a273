#pragma once

#include <cstddef>
#include <vector>

namespace hawkes {

// One realization on [0, horizon]: strictly increasing event times in
// (0, horizon], plus an optional past configuration with times <= 0.
// Immutable after construction; safe to share across threads.
class EventStream {
public:
    EventStream(double horizon, std::vector<double> times,
                std::vector<double> history = {});

    double horizon() const { return horizon_; }
    const std::vector<double>& times() const { return times_; }
    const std::vector<double>& history() const { return history_; }

    std::size_t count() const { return times_.size(); }

    // Number of events with time in (a, b]; history is excluded.
    std::size_t count_in(double a, double b) const;

    // N_T / T
    double mean_rate() const { return static_cast<double>(times_.size()) / horizon_; }

private:
    double horizon_ = 0.0;
    std::vector<double> times_;
    std::vector<double> history_;
};

}  // namespace hawkes

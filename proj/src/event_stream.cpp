#include "hawkes/event_stream.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hawkes {

EventStream::EventStream(double horizon, std::vector<double> times,
                         std::vector<double> history)
    : horizon_(horizon), times_(std::move(times)), history_(std::move(history)) {
    if (!(std::isfinite(horizon_) && horizon_ > 0.0)) {
        throw std::invalid_argument("event stream: horizon must be finite and > 0");
    }
    for (std::size_t i = 0; i < times_.size(); ++i) {
        if (!(times_[i] > 0.0 && times_[i] <= horizon_)) {
            throw std::invalid_argument("event stream: times must lie in (0, horizon]");
        }
        if (i > 0 && !(times_[i] > times_[i - 1])) {
            throw std::invalid_argument("event stream: times must be strictly increasing");
        }
    }
    for (std::size_t i = 0; i < history_.size(); ++i) {
        if (!(history_[i] <= 0.0) || !std::isfinite(history_[i])) {
            throw std::invalid_argument("event stream: history times must be <= 0");
        }
        if (i > 0 && !(history_[i] > history_[i - 1])) {
            throw std::invalid_argument("event stream: history must be strictly increasing");
        }
    }
}

std::size_t EventStream::count_in(double a, double b) const {
    auto lo = std::upper_bound(times_.begin(), times_.end(), a);
    auto hi = std::upper_bound(times_.begin(), times_.end(), b);
    return static_cast<std::size_t>(hi - lo);
}

}  // namespace hawkes

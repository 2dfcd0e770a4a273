#pragma once

#include <vector>

#include "hawkes/event_stream.hpp"
#include "hawkes/kernel.hpp"

namespace hawkes {

// Accumulated excitation Z(s) = sum over past events tau < s of h(s - tau),
// over a fixed stream (history plus events). Strict-past convention: an
// event at exactly s does not contribute to Z(s).
//
// Exponential kernels use the O(1)-per-query decay recursion anchored at
// each event; other shapes fall back to a windowed direct sum.
class ExcitationPath {
public:
    ExcitationPath(const Kernel& kernel, const EventStream& stream);

    double at(double s) const;

    // Decay amplitude A with Z(u) = A * exp(-decay * (u - s)) valid on
    // (s, next event]; includes an event located exactly at s. Only
    // meaningful for exponential kernels.
    double decayed_after(double s) const;

private:
    const Kernel* kernel_;
    std::vector<double> events_;  // merged history + times, ascending
    bool exponential_ = false;
    double amplitude_ = 0.0;
    double decay_ = 0.0;
    std::vector<double> post_amp_;  // decay amplitude just after events_[j]
};

}  // namespace hawkes

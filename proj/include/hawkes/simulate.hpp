#pragma once

#include <cstdint>
#include <vector>

#include "hawkes/event_stream.hpp"
#include "hawkes/model.hpp"
#include "hawkes/rng.hpp"

namespace hawkes {

struct SimConfig {
    std::uint64_t seed = 0;
    double horizon = 1.0;
    double burn_in = 0.0;
    int replicas = 1;
    std::uint64_t max_events = 10'000'000;  // explosion guard per path
};

// lambda(Z(t)) on the given stream; events at exactly t are excluded
// (the intensity is the predictable, strict-past version). Requires
// 0 <= t <= stream horizon.
double intensity_at(const IntensityModel& model, const EventStream& stream, double t);

// Exact draw from the model law on [0, cfg.horizon] by thinning, started
// from the given past configuration (times <= 0, ascending; empty = the
// process that sees no events before time 0). Deterministic in cfg.seed.
EventStream simulate_path(const IntensityModel& model, const SimConfig& cfg,
                          const std::vector<double>& history = {});

// Same draw, replica-indexed substream of cfg.seed. replica 0 matches
// simulate_path.
EventStream simulate_replica(const IntensityModel& model, const SimConfig& cfg,
                             std::uint64_t replica,
                             const std::vector<double>& history = {});

// Simulates on [-burn_in, horizon] from empty history and shifts, so the
// window [0, horizon] carries the pre-0 events as history. burn_in = 0
// reduces to simulate_path.
EventStream burn_in_stationarize(const IntensityModel& model, const SimConfig& cfg);

EventStream burn_in_replica(const IntensityModel& model, const SimConfig& cfg,
                            std::uint64_t replica);

// Default burn-in heuristic: 20 relaxation times for exponential kernels
// (20 / decay), 20 * cutoff otherwise.
double default_burn_in(const Kernel& kernel);

}  // namespace hawkes

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "hawkes/event_stream.hpp"
#include "hawkes/model.hpp"
#include "hawkes/simulate.hpp"

namespace hawkes {

// Parameters of the explicit large-deviation rate function for subcritical
// linear models: immigration rate nu > 0 and effective kernel mass
// hnorm = slope * ||h||_L1 in [0, 1). The long-run mean is nu / (1 - hnorm).
struct LinearRateParams {
    LinearRateParams(double nu_, double hnorm_);
    double nu;
    double hnorm;
    double mean() const { return nu / (1.0 - hnorm); }
};

// I(x) = x log(x / (nu + x hnorm)) - x + x hnorm + nu for x >= 0 (with the
// x -> 0 limit nu), +infinity for x < 0. Convex, zero exactly at the mean.
double linear_rate_fn(const LinearRateParams& params, double x);

// Derives LinearRateParams from a model with a linear rate; empty when the
// rate is nonlinear or nu = 0.
std::optional<LinearRateParams> linear_params(const IntensityModel& model);

enum class Bound { AtLeast, AtMost };

struct RateMinimum {
    double x = 0.0;      // minimizer over the constrained half-line
    double value = 0.0;  // rate function at the minimizer
};

// Minimum of the rate function over {x >= a} or {x <= a}, solved by
// convexity: the constrained minimizer is the threshold clamped to the mean.
RateMinimum rate_fn_minimum(const LinearRateParams& params, Bound bound, double a);

enum class Tail { Upper, Lower };

struct RareEventEstimate {
    double threshold = 0.0;
    double horizon = 0.0;
    Tail tail = Tail::Upper;
    double p_hat = 0.0;         // importance-sampling probability estimate
    double std_err = 0.0;       // standard error of p_hat
    double rate_hat = 0.0;      // -(1/horizon) log p_hat; +inf when p_hat = 0
    double rate_std_err = 0.0;  // delta-method standard error of rate_hat
    double ess = 0.0;           // (sum w)^2 / sum w^2 over contributing weights
    int replicas = 0;
    bool reliable = false;  // ess >= 30
    std::string proposal_label;
    std::optional<double> explicit_rate;  // I(threshold) for linear models
    std::optional<double> relative_gap;   // |rate_hat - I| / I when I > 0
};

// Estimates P(N_t / t >= a) (or <= a for the lower tail) under `model` by
// simulating replicas under `proposal` and weighting each path with
// exp(-log dQ/dP). Paths start empty unless cfg.burn_in > 0.
RareEventEstimate rare_event_probability(const IntensityModel& model, double threshold,
                                         double horizon, const IntensityModel& proposal,
                                         const SimConfig& cfg, Tail tail = Tail::Upper);

// Standard mean-shift tilt: for linear models, a copy with nu scaled so the
// proposal's long-run mean equals the threshold; for nonlinear models, a
// Poisson process at the threshold rate.
IntensityModel mean_matched_proposal(const IntensityModel& model, double threshold);

// A functional of the event pattern seen through a window of fixed length:
// eval receives the event positions relative to the window start (sorted,
// within [0, length]). Supported functionals are piecewise constant along
// window shifts, which empirical_functional exploits for exact evaluation.
struct WindowFunctional {
    double length = 1.0;
    std::string name;
    std::function<double(std::span<const double>, double)> eval;
};

WindowFunctional window_count(double length);
WindowFunctional window_indicator_at_least(double length, int m);
WindowFunctional window_truncated_count(double length, int ell);
WindowFunctional window_max_gap(double length);

// Time average (1/t) integral over s in [0, t] of f applied to the window
// [s, s + L] of the periodized path (events wrap modulo t). Computed exactly
// over the piecewise-constant partition induced by the events and their
// window-exit points. Requires t >= L; only events in (0, t] participate.
double empirical_functional(const EventStream& stream, const WindowFunctional& f);

struct LlnEstimate {
    double mean_rate = 0.0;
    double std_err = 0.0;
    int replicas = 0;
};

// Replica-averaged N_T / T with standard error. Paths start empty unless
// cfg.burn_in > 0.
LlnEstimate lln_estimate(const IntensityModel& model, const SimConfig& cfg);

}  // namespace hawkes

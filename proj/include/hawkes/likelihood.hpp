#pragma once

#include <vector>

#include "hawkes/event_stream.hpp"
#include "hawkes/model.hpp"
#include "hawkes/simulate.hpp"

namespace hawkes {

// log dQ/dP on [0, horizon] split into its two terms:
//   compensator_diff = integral of (lambda - lambda_hat) ds
//   jump_term        = sum over events of log(lambda_hat / lambda)
// where lambda is the base intensity and lambda_hat the target intensity,
// both evaluated on the same stream with the strict-past convention.
// `singular` marks a target intensity of zero at an event: the path is
// impossible under the target law and log_ratio is -infinity.
struct GirsanovBreakdown {
    double compensator_diff = 0.0;
    double jump_term = 0.0;
    double log_ratio = 0.0;  // compensator_diff + jump_term; -inf if singular
    double horizon = 0.0;
    bool singular = false;
};

// Integral of the model intensity over [0, upto] along the stream. Closed
// form per inter-event interval for exponential kernels with linear or
// clipped-linear rates; adaptive quadrature otherwise.
double compensator(const IntensityModel& model, const EventStream& stream, double upto);

// Girsanov log-likelihood ratio of `target` against `base` along `stream`.
// Requires base.rate().lower_bound() > 0; a base intensity of zero at an
// event (absolute-continuity violation) raises an error.
GirsanovBreakdown girsanov_log_ratio(const IntensityModel& target,
                                     const IntensityModel& base,
                                     const EventStream& stream);

// Pointwise entropy integrand lambda - lambda_hat + lambda_hat *
// log(lambda_hat / lambda); non-negative, zero iff the intensities agree.
double entropy_integrand(double lambda_base, double lambda_target);

struct EntropyEstimate {
    double rate = 0.0;     // ergodic time-average of the entropy integrand
    double std_err = 0.0;  // across replicas
    int replicas = 0;
    double stationarity_bias = 0.0;  // first-half minus second-half average
    double truncation_bound = 0.0;   // kernel tail mass beyond burn-in x mean rate
    std::vector<double> per_replica;
};

// Relative entropy rate of q_model's law with respect to p_model's law,
// estimated as the ergodic average of the entropy integrand along long
// burned-in paths simulated under q_model. Requires
// p_model.rate().lower_bound() > 0.
EntropyEstimate entropy_rate(const IntensityModel& q_model,
                             const IntensityModel& p_model, const SimConfig& cfg);

}  // namespace hawkes

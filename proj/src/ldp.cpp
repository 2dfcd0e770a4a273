#include "hawkes/ldp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hawkes/likelihood.hpp"
#include "hawkes/parallel.hpp"

namespace hawkes {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

struct MeanStdErr {
    double mean = 0.0;
    double std_err = 0.0;
};

MeanStdErr mean_std_err(const std::vector<double>& v) {
    MeanStdErr out;
    const double n = static_cast<double>(v.size());
    for (double x : v) out.mean += x;
    out.mean /= n;
    if (v.size() > 1) {
        double ss = 0.0;
        for (double x : v) ss += (x - out.mean) * (x - out.mean);
        out.std_err = std::sqrt(ss / (n * (n - 1.0)));
    }
    return out;
}

}  // namespace

LinearRateParams::LinearRateParams(double nu_, double hnorm_) : nu(nu_), hnorm(hnorm_) {
    if (!(std::isfinite(nu) && nu > 0.0)) {
        throw std::invalid_argument("rate-function params: nu must be > 0");
    }
    if (!(hnorm >= 0.0 && hnorm < 1.0)) {
        throw std::invalid_argument("rate-function params: hnorm must lie in [0, 1)");
    }
}

double linear_rate_fn(const LinearRateParams& params, double x) {
    if (x < 0.0) return kInf;
    if (x == 0.0) return params.nu;  // x log x -> 0
    return x * std::log(x / (params.nu + x * params.hnorm)) - x + x * params.hnorm +
           params.nu;
}

std::optional<LinearRateParams> linear_params(const IntensityModel& model) {
    const auto* lin = std::get_if<LinearRate>(&model.rate().shape());
    if (lin == nullptr || !(lin->nu > 0.0)) return std::nullopt;
    return LinearRateParams(lin->nu, lin->slope * model.kernel().l1());
}

RateMinimum rate_fn_minimum(const LinearRateParams& params, Bound bound, double a) {
    const double mu = params.mean();
    const double x_star = (bound == Bound::AtLeast) ? std::max(a, mu) : std::min(a, mu);
    return RateMinimum{x_star, linear_rate_fn(params, x_star)};
}

IntensityModel mean_matched_proposal(const IntensityModel& model, double threshold) {
    if (!(threshold > 0.0)) {
        throw std::invalid_argument("mean-matched proposal requires threshold > 0");
    }
    if (const auto* lin = std::get_if<LinearRate>(&model.rate().shape())) {
        const double hnorm = lin->slope * model.kernel().l1();
        const double nu = threshold * (1.0 - hnorm);
        return IntensityModel(model.kernel(), linear_rate(nu, lin->slope),
                              model.label() + "-tilted");
    }
    return poisson_model(threshold, model.label() + "-poisson-tilted");
}

RareEventEstimate rare_event_probability(const IntensityModel& model, double threshold,
                                         double horizon, const IntensityModel& proposal,
                                         const SimConfig& cfg, Tail tail) {
    if (!(horizon > 0.0)) throw std::invalid_argument("rare event: horizon must be > 0");
    const int replicas = std::max(1, cfg.replicas);

    SimConfig path_cfg = cfg;
    path_cfg.horizon = horizon;

    std::vector<double> contrib(replicas, 0.0);
    parallel_replicas(static_cast<std::size_t>(replicas), [&](std::size_t r) {
        const EventStream path = (path_cfg.burn_in > 0.0)
                                     ? burn_in_replica(proposal, path_cfg, r)
                                     : simulate_replica(proposal, path_cfg, r);
        const double observed = path.mean_rate();
        const bool hit =
            (tail == Tail::Upper) ? (observed >= threshold) : (observed <= threshold);
        if (!hit) return;
        const GirsanovBreakdown g = girsanov_log_ratio(proposal, model, path);
        if (g.singular) {
            throw std::logic_error(
                "proposal intensity vanished on its own path; invalid proposal");
        }
        contrib[r] = std::exp(-g.log_ratio);
    });

    const MeanStdErr stats = mean_std_err(contrib);

    RareEventEstimate est;
    est.threshold = threshold;
    est.horizon = horizon;
    est.tail = tail;
    est.replicas = replicas;
    est.proposal_label = proposal.label();
    est.p_hat = stats.mean;
    est.std_err = stats.std_err;
    if (est.p_hat > 0.0) {
        est.rate_hat = -std::log(est.p_hat) / horizon;
        est.rate_std_err = est.std_err / (est.p_hat * horizon);
    } else {
        est.rate_hat = kInf;
        est.rate_std_err = kInf;
    }
    double sum_w = 0.0, sum_w2 = 0.0;
    for (double w : contrib) {
        sum_w += w;
        sum_w2 += w * w;
    }
    est.ess = (sum_w2 > 0.0) ? (sum_w * sum_w) / sum_w2 : 0.0;
    est.reliable = est.ess >= 30.0;

    if (auto params = linear_params(model)) {
        const double ix = linear_rate_fn(*params, threshold);
        est.explicit_rate = ix;
        if (ix > 0.0 && std::isfinite(est.rate_hat)) {
            est.relative_gap = std::abs(est.rate_hat - ix) / ix;
        }
    }
    return est;
}

WindowFunctional window_count(double length) {
    return WindowFunctional{length, "count",
                            [](std::span<const double> rel, double) {
                                return static_cast<double>(rel.size());
                            }};
}

WindowFunctional window_indicator_at_least(double length, int m) {
    return WindowFunctional{length, "indicator_at_least_" + std::to_string(m),
                            [m](std::span<const double> rel, double) {
                                return rel.size() >= static_cast<std::size_t>(m) ? 1.0
                                                                                 : 0.0;
                            }};
}

WindowFunctional window_truncated_count(double length, int ell) {
    return WindowFunctional{length, "truncated_count_" + std::to_string(ell),
                            [ell](std::span<const double> rel, double) {
                                return rel.size() >= static_cast<std::size_t>(ell)
                                           ? static_cast<double>(rel.size())
                                           : 0.0;
                            }};
}

WindowFunctional window_max_gap(double length) {
    return WindowFunctional{length, "max_gap",
                            [](std::span<const double> rel, double) {
                                if (rel.size() < 2) return 0.0;
                                double best = 0.0;
                                for (std::size_t i = 1; i < rel.size(); ++i) {
                                    best = std::max(best, rel[i] - rel[i - 1]);
                                }
                                return best;
                            }};
}

double empirical_functional(const EventStream& stream, const WindowFunctional& f) {
    const double t = stream.horizon();
    const double L = f.length;
    if (!(L > 0.0)) throw std::invalid_argument("window length must be > 0");
    if (!(t >= L)) {
        throw std::invalid_argument("empirical functional requires horizon >= window length");
    }
    const auto& times = stream.times();

    // The window content changes only when a periodized event enters at the
    // right edge (s = tau - L mod t) or leaves at the left edge (s = tau).
    std::vector<double> cuts;
    cuts.reserve(2 * times.size() + 2);
    cuts.push_back(0.0);
    cuts.push_back(t);
    for (double tau : times) {
        if (tau < t) cuts.push_back(tau);
        double enter = tau - L;
        if (enter < 0.0) enter += t;
        if (enter > 0.0 && enter < t) cuts.push_back(enter);
    }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

    // Periodized copies covering windows [s, s + L] for s in [0, t].
    std::vector<double> periodized;
    periodized.reserve(2 * times.size());
    periodized.insert(periodized.end(), times.begin(), times.end());
    for (double tau : times) periodized.push_back(tau + t);

    std::vector<double> rel;
    double integral = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i];
        const double hi = cuts[i + 1];
        const double mid = 0.5 * (lo + hi);
        rel.clear();
        auto first = std::lower_bound(periodized.begin(), periodized.end(), mid);
        for (auto it = first; it != periodized.end() && *it <= mid + L; ++it) {
            rel.push_back(*it - mid);
        }
        integral += f.eval(rel, L) * (hi - lo);
    }
    return integral / t;
}

LlnEstimate lln_estimate(const IntensityModel& model, const SimConfig& cfg) {
    const int replicas = std::max(1, cfg.replicas);
    std::vector<double> rates(replicas, 0.0);
    parallel_replicas(static_cast<std::size_t>(replicas), [&](std::size_t r) {
        const EventStream path = (cfg.burn_in > 0.0) ? burn_in_replica(model, cfg, r)
                                                     : simulate_replica(model, cfg, r);
        rates[r] = path.mean_rate();
    });
    const MeanStdErr stats = mean_std_err(rates);
    return LlnEstimate{stats.mean, stats.std_err, replicas};
}

}  // namespace hawkes

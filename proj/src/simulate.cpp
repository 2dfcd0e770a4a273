#include "hawkes/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hawkes/errors.hpp"
#include "hawkes/excitation.hpp"

namespace hawkes {

namespace {

// Thinning state for exponential kernels: Z(s) = amp * exp(-decay (s - t)).
struct ExpState {
    double amp = 0.0;
    double anchor = 0.0;
    double a = 0.0;
    double decay = 1.0;

    static ExpState from(const ExponentialKernel& k, const std::vector<double>& history) {
        ExpState st{0.0, 0.0, k.amplitude, k.decay};
        // Z(s) = sum over tau <= 0 of a e^{-decay (s - tau)} for s >= 0
        for (double tau : history) st.amp += k.amplitude * std::exp(k.decay * tau);
        return st;
    }

    double bound() const { return amp; }
    double value_at(double s) const { return amp * std::exp(-decay * (s - anchor)); }
    void advance(double s) {
        amp = value_at(s);
        anchor = s;
    }
    void add_event() { amp += a; }
};

// Fallback state for general kernels: windowed direct sums over past events.
struct GeneralState {
    const Kernel* kernel;
    std::vector<double> past;  // history + accepted events, ascending
    double anchor = 0.0;
    double zbar = 0.0;  // sum over tau <= anchor of h(anchor - tau)

    static GeneralState from(const Kernel& k, const std::vector<double>& history) {
        GeneralState st{&k, history, 0.0, 0.0};
        st.zbar = st.sum_at(0.0);
        return st;
    }

    // sum over tau <= s (all past events are <= anchor <= s)
    double sum_at(double s) const {
        const double lo = s - kernel->cutoff();
        auto first = std::lower_bound(past.begin(), past.end(), lo);
        double z = 0.0;
        for (auto it = first; it != past.end(); ++it) z += kernel->eval(s - *it);
        return z;
    }

    double bound() const { return zbar; }
    double value_at(double s) const { return sum_at(s); }
    void advance(double s) {
        zbar = sum_at(s);
        anchor = s;
    }
    void add_event() {
        past.push_back(anchor);
        zbar += kernel->at_zero();
    }
};

// Ogata-style thinning with an exact dominating rate. Between events the
// excitation Z(s) = sum h(s - tau) can only decrease (h is non-increasing
// and no new events arrive), and lambda is non-decreasing, so the intensity
// evaluated at the current anchor dominates until the next candidate. The
// anchor is moved to every candidate, accepted or rejected.
template <typename State>
std::vector<double> thin(const RateFn& rate, State state, double total_horizon,
                         std::uint64_t max_events, Rng& rng) {
    std::vector<double> times;
    double t = 0.0;
    while (true) {
        const double lam_bar = rate.eval(state.bound());
        if (!(lam_bar > 0.0)) break;  // intensity can never rise again
        const double s = t + rng.exponential(lam_bar);
        if (!(s > t)) continue;  // guard against zero-length gaps
        if (s > total_horizon) break;
        const double lam = rate.eval(state.value_at(s));
        state.advance(s);
        if (rng.uniform() * lam_bar < lam) {
            times.push_back(s);
            state.add_event();
            if (times.size() > max_events) {
                throw ExplosionError("path exceeded event ceiling of " +
                                     std::to_string(max_events) + " events");
            }
        }
        t = s;
    }
    return times;
}

std::vector<double> simulate_times(const IntensityModel& model, double total_horizon,
                                   std::uint64_t max_events, Rng& rng,
                                   const std::vector<double>& history) {
    for (std::size_t i = 0; i < history.size(); ++i) {
        if (history[i] > 0.0 || (i > 0 && history[i] <= history[i - 1])) {
            throw std::invalid_argument("history must be ascending with times <= 0");
        }
    }
    if (const auto* e = std::get_if<ExponentialKernel>(&model.kernel().shape())) {
        return thin(model.rate(), ExpState::from(*e, history), total_horizon,
                    max_events, rng);
    }
    return thin(model.rate(), GeneralState::from(model.kernel(), history),
                total_horizon, max_events, rng);
}

}  // namespace

double intensity_at(const IntensityModel& model, const EventStream& stream, double t) {
    if (!(t >= 0.0 && t <= stream.horizon())) {
        throw std::invalid_argument("intensity_at requires 0 <= t <= horizon");
    }
    ExcitationPath z(model.kernel(), stream);
    return model.rate().eval(z.at(t));
}

EventStream simulate_replica(const IntensityModel& model, const SimConfig& cfg,
                             std::uint64_t replica, const std::vector<double>& history) {
    if (!(cfg.horizon > 0.0)) throw std::invalid_argument("horizon must be > 0");
    Rng rng = Rng::substream(cfg.seed, replica);
    auto times = simulate_times(model, cfg.horizon, cfg.max_events, rng, history);
    return EventStream(cfg.horizon, std::move(times), history);
}

EventStream simulate_path(const IntensityModel& model, const SimConfig& cfg,
                          const std::vector<double>& history) {
    return simulate_replica(model, cfg, 0, history);
}

EventStream burn_in_replica(const IntensityModel& model, const SimConfig& cfg,
                            std::uint64_t replica) {
    if (!(cfg.horizon > 0.0)) throw std::invalid_argument("horizon must be > 0");
    if (cfg.burn_in < 0.0) throw std::invalid_argument("burn_in must be >= 0");
    Rng rng = Rng::substream(cfg.seed, replica);
    auto raw = simulate_times(model, cfg.burn_in + cfg.horizon, cfg.max_events, rng, {});
    std::vector<double> history;
    std::vector<double> times;
    for (double tau : raw) {
        const double shifted = tau - cfg.burn_in;
        if (shifted <= 0.0) {
            history.push_back(shifted);
        } else {
            times.push_back(shifted);
        }
    }
    return EventStream(cfg.horizon, std::move(times), std::move(history));
}

EventStream burn_in_stationarize(const IntensityModel& model, const SimConfig& cfg) {
    return burn_in_replica(model, cfg, 0);
}

double default_burn_in(const Kernel& kernel) {
    if (const auto* e = std::get_if<ExponentialKernel>(&kernel.shape())) {
        return 20.0 / e->decay;
    }
    return 20.0 * kernel.cutoff();
}

}  // namespace hawkes

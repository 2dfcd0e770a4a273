#include "hawkes/likelihood.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hawkes/excitation.hpp"
#include "hawkes/parallel.hpp"
#include "hawkes/quadrature.hpp"

namespace hawkes {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Visits the inter-event pieces of [from, to]; boundaries are the events of
// the stream, where the excitation (and thus the integrand) is kinked.
template <typename Fn>
void for_each_piece(const EventStream& stream, double from, double to, Fn&& fn) {
    const auto& times = stream.times();
    double prev = from;
    for (auto it = std::upper_bound(times.begin(), times.end(), from);
         it != times.end() && *it < to; ++it) {
        if (*it > prev) {
            fn(prev, *it);
            prev = *it;
        }
    }
    if (to > prev) fn(prev, to);
}

// Integral of min(nu + A e^{-beta u}, cap) for u in [0, len].
double clipped_exp_piece(double nu, double cap, double A, double beta, double len) {
    if (cap <= nu) return cap * len;  // the rate is pinned at the cap
    if (A <= cap - nu) {
        return nu * len + A * (-std::expm1(-beta * len)) / beta;
    }
    const double cross = std::log(A / (cap - nu)) / beta;
    const double uc = std::min(cross, len);
    double total = cap * uc;
    if (len > uc) {
        const double A_uc = A * std::exp(-beta * uc);
        total += nu * (len - uc) + A_uc * (-std::expm1(-beta * (len - uc))) / beta;
    }
    return total;
}

// Integral of rate(Z(s)) over one inter-event piece [a, b].
double piece_integral(const IntensityModel& model, const ExcitationPath& z,
                      double a, double b) {
    const double len = b - a;
    if (model.kernel().is_exponential()) {
        const auto& k = std::get<ExponentialKernel>(model.kernel().shape());
        const double A = z.decayed_after(a);
        if (const auto* lin = std::get_if<LinearRate>(&model.rate().shape())) {
            return lin->nu * len + lin->slope * A * (-std::expm1(-k.decay * len)) / k.decay;
        }
        if (const auto* cl = std::get_if<ClippedLinearRate>(&model.rate().shape())) {
            return clipped_exp_piece(cl->nu, cl->cap, A, k.decay, len);
        }
    }
    const auto f = [&](double s) { return model.rate().eval(z.at(s)); };
    const double coarse = std::abs(f(0.5 * (a + b))) * len;
    const double tol = 1e-9 * std::max(len, coarse);
    return integrate_adaptive(f, a, b, tol);
}

void check_girsanov_preconditions(const IntensityModel& base) {
    if (!(base.rate().lower_bound() > 0.0)) {
        throw std::invalid_argument(
            "girsanov base model must have a rate bounded away from zero");
    }
}

}  // namespace

double compensator(const IntensityModel& model, const EventStream& stream, double upto) {
    if (!(upto >= 0.0 && upto <= stream.horizon())) {
        throw std::invalid_argument("compensator requires 0 <= upto <= horizon");
    }
    if (upto == 0.0) return 0.0;
    ExcitationPath z(model.kernel(), stream);
    double total = 0.0;
    for_each_piece(stream, 0.0, upto,
                   [&](double a, double b) { total += piece_integral(model, z, a, b); });
    return total;
}

GirsanovBreakdown girsanov_log_ratio(const IntensityModel& target,
                                     const IntensityModel& base,
                                     const EventStream& stream) {
    check_girsanov_preconditions(base);
    ExcitationPath z_base(base.kernel(), stream);
    ExcitationPath z_target(target.kernel(), stream);

    GirsanovBreakdown out;
    out.horizon = stream.horizon();

    for_each_piece(stream, 0.0, stream.horizon(), [&](double a, double b) {
        out.compensator_diff +=
            piece_integral(base, z_base, a, b) - piece_integral(target, z_target, a, b);
    });

    for (double tau : stream.times()) {
        const double lb = base.rate().eval(z_base.at(tau));
        const double lt = target.rate().eval(z_target.at(tau));
        if (!(lb > 0.0)) {
            throw std::runtime_error(
                "absolute continuity violated: base intensity vanished at an event");
        }
        if (lt == 0.0) {
            out.singular = true;
            break;
        }
        out.jump_term += std::log(lt) - std::log(lb);
    }

    if (out.singular) {
        out.jump_term = -kInf;
        out.log_ratio = -kInf;
    } else {
        out.log_ratio = out.compensator_diff + out.jump_term;
    }
    return out;
}

double entropy_integrand(double lambda_base, double lambda_target) {
    if (lambda_target == lambda_base) return 0.0;
    if (lambda_target <= 0.0) return lambda_base;
    if (lambda_base <= 0.0) return kInf;
    return lambda_base - lambda_target +
           lambda_target * std::log(lambda_target / lambda_base);
}

EntropyEstimate entropy_rate(const IntensityModel& q_model,
                             const IntensityModel& p_model, const SimConfig& cfg) {
    if (!(p_model.rate().lower_bound() > 0.0)) {
        throw std::invalid_argument(
            "entropy_rate requires the reference rate bounded away from zero");
    }
    SimConfig path_cfg = cfg;
    if (path_cfg.burn_in <= 0.0) path_cfg.burn_in = default_burn_in(q_model.kernel());
    const int replicas = std::max(1, cfg.replicas);
    const double T = cfg.horizon;

    std::vector<double> values(replicas, 0.0);
    std::vector<double> biases(replicas, 0.0);
    std::vector<double> rates(replicas, 0.0);

    parallel_replicas(static_cast<std::size_t>(replicas), [&](std::size_t r) {
        const EventStream path = burn_in_replica(q_model, path_cfg, r);
        ExcitationPath zq(q_model.kernel(), path);
        ExcitationPath zp(p_model.kernel(), path);
        const auto g = [&](double s) {
            return entropy_integrand(p_model.rate().eval(zp.at(s)),
                                     q_model.rate().eval(zq.at(s)));
        };
        const auto half_integral = [&](double a, double b) {
            double total = 0.0;
            for_each_piece(path, a, b, [&](double lo, double hi) {
                const double len = hi - lo;
                const double coarse = std::abs(g(0.5 * (lo + hi))) * len;
                const double tol = 1e-9 * std::max(len, coarse);
                total += integrate_adaptive(g, lo, hi, tol);
            });
            return total;
        };
        const double first = half_integral(0.0, 0.5 * T);
        const double second = half_integral(0.5 * T, T);
        values[r] = (first + second) / T;
        biases[r] = (first - second) / (0.5 * T);
        rates[r] = path.mean_rate();
    });

    EntropyEstimate est;
    est.replicas = replicas;
    est.per_replica = values;
    double sum = 0.0;
    for (double v : values) sum += v;
    est.rate = sum / replicas;
    if (replicas > 1) {
        double ss = 0.0;
        for (double v : values) ss += (v - est.rate) * (v - est.rate);
        est.std_err = std::sqrt(ss / (static_cast<double>(replicas) *
                                      (static_cast<double>(replicas) - 1.0)));
    }
    double bias_sum = 0.0;
    for (double b : biases) bias_sum += b;
    est.stationarity_bias = bias_sum / replicas;
    double rate_sum = 0.0;
    for (double r : rates) rate_sum += r;
    const double mean_rate = rate_sum / replicas;
    est.truncation_bound =
        std::max(q_model.kernel().tail(path_cfg.burn_in),
                 p_model.kernel().tail(path_cfg.burn_in)) * mean_rate;

    if (est.rate < -3.0 * est.std_err) {
        throw std::logic_error("entropy rate estimate fell below -3 standard errors");
    }
    return est;
}

}  // namespace hawkes

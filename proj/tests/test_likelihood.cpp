#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "hawkes/excitation.hpp"
#include "hawkes/likelihood.hpp"
#include "hawkes/rng.hpp"
#include "hawkes/simulate.hpp"
#include "support/stats.hpp"

using namespace hawkes;

namespace {

IntensityModel linear_hawkes(double nu, double slope = 1.0, double a = 1.0,
                             double beta = 2.0, const char* label = "hawkes") {
    return IntensityModel(exponential_kernel(a, beta), linear_rate(nu, slope), label);
}

IntensityModel poisson(double nu, const char* label = "poisson") {
    return IntensityModel(exponential_kernel(0.0, 1.0), linear_rate(nu, 0.0), label);
}

}  // namespace

TEST_CASE("compensator of a constant rate") {
    const IntensityModel m = poisson(2.0);
    const EventStream s(10.0, {1.0, 2.0, 7.5});
    CHECK(compensator(m, s, 5.0) == doctest::Approx(10.0).epsilon(1e-12));
    CHECK(compensator(m, s, 0.0) == 0.0);
    CHECK_THROWS_AS((void)compensator(m, s, 11.0), std::invalid_argument);
}

TEST_CASE("compensator with no events reduces to nu * t") {
    const IntensityModel m = linear_hawkes(1.0);
    const EventStream s(5.0, {});
    CHECK(compensator(m, s, 3.0) == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("compensator closed form after a single event") {
    const IntensityModel m(exponential_kernel(1.0, 2.0), linear_rate(0.0, 1.0), "pure");
    const EventStream s(5.0, {1.0});
    const double expect = (1.0 - std::exp(-2.0)) / 2.0;
    CHECK(compensator(m, s, 2.0) == doctest::Approx(expect).epsilon(1e-12));
}

namespace {

// Event-aligned oracle: integrates the pathwise intensity piece by piece so
// the oracle never crosses an excitation kink. Midpoint Riemann inside each
// piece is robust to the interior kink of clipped rates.
double compensator_oracle(const IntensityModel& m, const EventStream& s, double upto) {
    ExcitationPath z(m.kernel(), s);
    const auto f = [&](double t) { return m.rate().eval(z.at(t)); };
    std::vector<double> bounds{0.0};
    for (double tau : s.times()) {
        if (tau < upto) bounds.push_back(tau);
    }
    bounds.push_back(upto);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < bounds.size(); ++i) {
        const double a = bounds[i];
        const double b = bounds[i + 1];
        const long n = 200'000;
        double sum = 0.0;
        for (long j = 0; j < n; ++j) {
            sum += f(a + (b - a) * (static_cast<double>(j) + 0.5) / static_cast<double>(n));
        }
        total += sum * (b - a) / static_cast<double>(n);
    }
    return total;
}

}  // namespace

TEST_CASE("quadrature route agrees with an independent oracle") {
    // saturating rate forces the adaptive quadrature path
    const IntensityModel m(exponential_kernel(1.0, 2.0), saturating_rate(1.0, 3.0, 0.7),
                           "sat");
    SimConfig cfg{.seed = 21, .horizon = 20.0};
    const EventStream s = simulate_path(m, cfg);
    const double oracle = compensator_oracle(m, s, 9.75);
    CHECK(compensator(m, s, 9.75) == doctest::Approx(oracle).epsilon(1e-7));
}

TEST_CASE("clipped closed form agrees with quadrature") {
    const IntensityModel m(exponential_kernel(2.0, 1.5), clipped_linear_rate(0.5, 1.4),
                           "clip");
    SimConfig cfg{.seed = 31, .horizon = 25.0};
    const EventStream s = simulate_path(m, cfg);
    for (double upto : {3.0, 11.2, 25.0}) {
        const double oracle = compensator_oracle(m, s, upto);
        CHECK(compensator(m, s, upto) == doctest::Approx(oracle).epsilon(1e-7));
    }
}

TEST_CASE("girsanov of a model against itself is exactly zero") {
    const IntensityModel m = linear_hawkes(1.0);
    SimConfig cfg{.seed = 9, .horizon = 30.0};
    const EventStream s = simulate_path(m, cfg);
    const GirsanovBreakdown g = girsanov_log_ratio(m, m, s);
    CHECK(g.compensator_diff == 0.0);
    CHECK(g.jump_term == 0.0);
    CHECK(g.log_ratio == 0.0);
    CHECK_FALSE(g.singular);
}

TEST_CASE("girsanov between constant rates matches the hand formula") {
    const IntensityModel base = poisson(1.0, "base");
    const IntensityModel target = poisson(2.0, "target");
    const EventStream s(1.0, {0.2, 0.5, 0.9});
    const GirsanovBreakdown g = girsanov_log_ratio(target, base, s);
    CHECK(g.compensator_diff == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(g.jump_term == doctest::Approx(3.0 * std::log(2.0)).epsilon(1e-12));
    CHECK(g.log_ratio == doctest::Approx(-1.0 + 3.0 * std::log(2.0)).epsilon(1e-12));
    CHECK(g.log_ratio == g.compensator_diff + g.jump_term);
}

TEST_CASE("girsanov antisymmetry") {
    const IntensityModel a = linear_hawkes(1.0, 1.0, 1.0, 2.0, "a");
    const IntensityModel b(exponential_kernel(0.6, 1.0), saturating_rate(0.8, 2.0, 1.0),
                           "b");
    SimConfig cfg{.seed = 12, .horizon = 15.0};
    const EventStream s = simulate_path(a, cfg);
    const double ab = girsanov_log_ratio(a, b, s).log_ratio;
    const double ba = girsanov_log_ratio(b, a, s).log_ratio;
    CHECK(std::abs(ab + ba) <= 1e-9);
}

TEST_CASE("girsanov chain additivity across a time split") {
    const IntensityModel base = linear_hawkes(1.0, 1.0, 1.0, 2.0, "base");
    const IntensityModel target(exponential_kernel(1.0, 2.0), saturating_rate(1.2, 3.0, 1.0),
                                "target");
    SimConfig cfg{.seed = 77, .horizon = 8.0};
    const EventStream full = simulate_path(base, cfg);
    const double T = full.horizon();
    const double half = 0.5 * T;

    std::vector<double> first_times, second_times, second_history;
    for (double tau : full.times()) {
        if (tau <= half) {
            first_times.push_back(tau);
            second_history.push_back(tau - half);
        } else {
            second_times.push_back(tau - half);
        }
    }
    const EventStream first(half, first_times);
    const EventStream second(half, second_times, second_history);

    const double whole = girsanov_log_ratio(target, base, full).log_ratio;
    const double split = girsanov_log_ratio(target, base, first).log_ratio +
                         girsanov_log_ratio(target, base, second).log_ratio;
    CHECK(whole == doctest::Approx(split).epsilon(1e-6));
}

TEST_CASE("singular target flagged when its intensity vanishes at an event") {
    const IntensityModel base = poisson(1.0, "base");
    // zero baseline and no excitation before the first event
    const IntensityModel target(exponential_kernel(1.0, 2.0), linear_rate(0.0, 1.0),
                                "target");
    const EventStream s(5.0, {1.0, 2.0});
    const GirsanovBreakdown g = girsanov_log_ratio(target, base, s);
    CHECK(g.singular);
    CHECK(std::isinf(g.log_ratio));
    CHECK(g.log_ratio < 0.0);
}

TEST_CASE("girsanov requires a base rate bounded away from zero") {
    const IntensityModel base(exponential_kernel(1.0, 2.0), linear_rate(0.0, 1.0), "base");
    const IntensityModel target = poisson(1.0, "target");
    const EventStream s(5.0, {1.0});
    CHECK_THROWS_AS((void)girsanov_log_ratio(target, base, s), std::invalid_argument);
}

TEST_CASE("importance weights have unit mean under the base law") {
    const IntensityModel base = linear_hawkes(1.0, 1.0, 1.0, 2.0, "base");
    const IntensityModel target = linear_hawkes(1.3, 1.0, 1.0, 2.0, "target");
    SimConfig cfg{.seed = 2718, .horizon = 5.0};
    std::vector<double> weights;
    for (int r = 0; r < 4000; ++r) {
        const EventStream s = simulate_replica(base, cfg, r);
        weights.push_back(std::exp(girsanov_log_ratio(target, base, s).log_ratio));
    }
    const double se = teststats::std_err(weights);
    CHECK(std::abs(teststats::mean(weights) - 1.0) <= 4.0 * se);
}

TEST_CASE("entropy integrand is non-negative with equality at identity") {
    Rng rng = Rng::seeded(5);
    for (int i = 0; i < 10'000; ++i) {
        const double lam = 1e-3 + 1000.0 * rng.uniform();
        const double lam_hat = 1e-3 + 1000.0 * rng.uniform();
        const double v = entropy_integrand(lam, lam_hat);
        CHECK(v >= 0.0);
        if (lam != lam_hat) CHECK(v > 0.0);
    }
    CHECK(entropy_integrand(3.7, 3.7) == 0.0);
}

TEST_CASE("entropy rate of a model against itself is exactly zero") {
    const IntensityModel m = linear_hawkes(1.0);
    SimConfig cfg{.seed = 4, .horizon = 50.0, .burn_in = 10.0, .replicas = 4};
    const EntropyEstimate est = entropy_rate(m, m, cfg);
    CHECK(est.rate == 0.0);
    CHECK(est.std_err == 0.0);
}

TEST_CASE("entropy rate between constant intensities is exact") {
    const IntensityModel q = poisson(2.0, "q");
    const IntensityModel p = poisson(1.0, "p");
    SimConfig cfg{.seed = 6, .horizon = 40.0, .burn_in = 5.0, .replicas = 4};
    const EntropyEstimate est = entropy_rate(q, p, cfg);
    const double expect = 1.0 - 2.0 + 2.0 * std::log(2.0);
    CHECK(est.rate == doctest::Approx(expect).epsilon(1e-9));
}

TEST_CASE("entropy rate requires a positive reference lower bound") {
    const IntensityModel q = poisson(2.0, "q");
    const IntensityModel p(exponential_kernel(1.0, 2.0), linear_rate(0.0, 1.0), "p");
    SimConfig cfg{.seed = 6, .horizon = 10.0, .replicas = 2};
    CHECK_THROWS_AS((void)entropy_rate(q, p, cfg), std::invalid_argument);
}

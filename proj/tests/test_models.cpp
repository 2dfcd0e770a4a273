#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "hawkes/kernel.hpp"
#include "hawkes/model.hpp"
#include "hawkes/rate.hpp"
#include "hawkes/rng.hpp"
#include "support/stats.hpp"

using namespace hawkes;

namespace {

std::vector<Kernel> sample_kernels() {
    std::vector<Kernel> out;
    out.push_back(exponential_kernel(1.0, 2.0));
    out.push_back(exponential_kernel(0.3, 0.7));
    out.push_back(power_law_kernel(1.0, 1.0, 2.0));
    out.push_back(power_law_kernel(0.5, 2.0, 3.5));
    out.push_back(table_kernel(TableInterp::Step, {{0.0, 1.0}, {1.0, 0.0}}));
    out.push_back(table_kernel(TableInterp::Linear,
                               {{0.0, 2.0}, {0.5, 1.0}, {1.5, 0.25}, {2.0, 0.0}}));
    return out;
}

std::vector<RateFn> sample_rates() {
    std::vector<RateFn> out;
    out.push_back(linear_rate(1.0, 1.0));
    out.push_back(linear_rate(2.0, 0.0));
    out.push_back(saturating_rate(1.0, 3.0, 1.0));
    out.push_back(clipped_linear_rate(1.0, 5.0));
    return out;
}

}  // namespace

TEST_CASE("kernel pointwise evaluation") {
    const Kernel k = exponential_kernel(1.0, 2.0);
    CHECK(k.eval(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(k.eval(-1.0) == 0.0);
    CHECK(k.eval(0.5) == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
    CHECK(k.eval(k.cutoff() + 1.0) == 0.0);
}

TEST_CASE("kernel L1 norms") {
    CHECK(exponential_kernel(1.0, 2.0).l1() == doctest::Approx(0.5).epsilon(1e-12));
    const Kernel box = table_kernel(TableInterp::Step, {{0.0, 1.0}, {1.0, 0.0}});
    CHECK(box.l1() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(power_law_kernel(1.0, 1.0, 2.0).l1() == doctest::Approx(1.0).epsilon(1e-12));
    const Kernel tri = table_kernel(TableInterp::Linear, {{0.0, 1.0}, {1.0, 0.0}});
    CHECK(tri.l1() == doctest::Approx(0.5).epsilon(1e-12));
}

TEST_CASE("kernel tail values") {
    const Kernel k = exponential_kernel(1.0, 2.0);
    CHECK(k.tail(0.0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(k.tail(1.0) == doctest::Approx(0.5 * std::exp(-2.0)).epsilon(1e-12));
    CHECK(k.tail(1e6) == doctest::Approx(0.0).epsilon(1e-12));
    for (const Kernel& kk : sample_kernels()) {
        CHECK(kk.tail(0.0) == doctest::Approx(kk.l1()).epsilon(1e-12));
    }
}

TEST_CASE("tail matches quadrature of eval on a grid") {
    for (const Kernel& k : sample_kernels()) {
        if (k.l1() == 0.0) continue;
        const double hi = std::min(k.cutoff(), 50.0);
        for (int i = 0; i < 100; ++i) {
            const double t = hi * static_cast<double>(i) / 100.0;
            const double quad = teststats::adaptive_simpson(
                [&](double s) { return k.eval(s); }, t, hi, 1e-10);
            const double expect = k.tail(t) - k.tail(hi);
            CHECK(std::abs(quad - expect) <= 1e-6 * k.l1());
        }
    }
}

TEST_CASE("cutoff bounds the discarded tail mass") {
    for (const Kernel& k : sample_kernels()) {
        CHECK(k.tail(k.cutoff()) <= 1e-12 * k.l1() + 1e-300);
    }
}

TEST_CASE("kernel monotonicity on a sampled grid") {
    for (const Kernel& k : sample_kernels()) {
        const double hi = std::min(k.cutoff(), 30.0);
        double prev = k.eval(0.0);
        for (int i = 1; i <= 300; ++i) {
            const double cur = k.eval(hi * static_cast<double>(i) / 300.0);
            CHECK(cur <= prev + 1e-15);
            prev = cur;
        }
    }
}

TEST_CASE("rate evaluation") {
    CHECK(linear_rate(1.0, 1.0).eval(0.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(clipped_linear_rate(1.0, 5.0).eval(10.0) == doctest::Approx(5.0).epsilon(1e-15));
    const double expect = 1.0 + 2.0 * (1.0 - std::exp(-1.0));
    CHECK(saturating_rate(1.0, 3.0, 1.0).eval(1.0) ==
          doctest::Approx(expect).epsilon(1e-12));
    CHECK_THROWS_AS((void)linear_rate(1.0, 1.0).eval(-0.5), std::invalid_argument);
}

TEST_CASE("rate monotonicity and lower bound") {
    for (const RateFn& r : sample_rates()) {
        double prev = r.eval(0.0);
        CHECK(prev == r.lower_bound());
        for (int i = 1; i <= 300; ++i) {
            const double cur = r.eval(0.1 * static_cast<double>(i));
            CHECK(cur + 1e-15 >= prev);
            CHECK(cur >= r.lower_bound());
            prev = cur;
        }
    }
}

TEST_CASE("lipschitz bound holds on random pairs") {
    Rng rng = Rng::seeded(11);
    for (const RateFn& r : sample_rates()) {
        for (int i = 0; i < 10'000; ++i) {
            const double x = 50.0 * rng.uniform();
            const double y = 50.0 * rng.uniform();
            const double lhs = std::abs(r.eval(x) - r.eval(y));
            CHECK(lhs <= r.lipschitz() * std::abs(x - y) + 1e-12);
        }
    }
}

TEST_CASE("sublinearity flags") {
    CHECK_FALSE(linear_rate(1.0, 1.0).sublinear());
    CHECK(linear_rate(2.0, 0.0).sublinear());
    CHECK(saturating_rate(1.0, 3.0, 1.0).sublinear());
    CHECK(clipped_linear_rate(1.0, 2.0).sublinear());
}

TEST_CASE("construction rejects invalid shapes") {
    CHECK_THROWS_AS(exponential_kernel(-1.0, 2.0), std::invalid_argument);
    CHECK_THROWS_AS(exponential_kernel(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(power_law_kernel(1.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(power_law_kernel(1.0, 0.0, 2.0), std::invalid_argument);
    // non-monotone table
    CHECK_THROWS_AS(table_kernel(TableInterp::Step, {{0.0, 1.0}, {1.0, 2.0}, {2.0, 0.0}}),
                    std::invalid_argument);
    // support must close at zero
    CHECK_THROWS_AS(table_kernel(TableInterp::Step, {{0.0, 1.0}, {1.0, 0.5}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(table_kernel(TableInterp::Step, {{0.5, 1.0}, {1.0, 0.0}}),
                    std::invalid_argument);
    CHECK_THROWS_AS(linear_rate(-1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(saturating_rate(1.0, 1.0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(clipped_linear_rate(2.0, 1.0), std::invalid_argument);
}

TEST_CASE("model rejects the supercritical linear regime") {
    // slope * l1 = 1.2
    CHECK_THROWS_WITH_AS(
        IntensityModel(exponential_kernel(1.2, 1.0), linear_rate(1.0, 1.0), "bad"),
        doctest::Contains("supercritical"), std::invalid_argument);
    CHECK_THROWS_AS(
        IntensityModel(exponential_kernel(2.0, 2.0), linear_rate(1.0, 1.0), "critical"),
        std::invalid_argument);  // slope * l1 = 1 exactly
    CHECK_NOTHROW(
        IntensityModel(exponential_kernel(1.0, 2.0), linear_rate(1.0, 1.0), "ok"));
    // nonlinear rates carry no subcriticality constraint
    CHECK_NOTHROW(IntensityModel(exponential_kernel(5.0, 1.0),
                                 clipped_linear_rate(1.0, 2.0), "clipped"));
}

TEST_CASE("table kernels are flagged compact support") {
    CHECK(table_kernel(TableInterp::Step, {{0.0, 1.0}, {1.0, 0.0}}).compact_support());
    CHECK_FALSE(exponential_kernel(1.0, 2.0).compact_support());
    CHECK_FALSE(power_law_kernel(1.0, 1.0, 2.0).compact_support());
}

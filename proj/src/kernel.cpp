#include "hawkes/kernel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace hawkes {

namespace {

constexpr double kTailFraction = 1e-12;  // tolerated tail mass beyond cutoff

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

void validate(const ExponentialKernel& k) {
    require(std::isfinite(k.amplitude) && k.amplitude >= 0.0,
            "exponential kernel: amplitude must be finite and >= 0");
    require(std::isfinite(k.decay) && k.decay > 0.0,
            "exponential kernel: decay must be finite and > 0");
}

void validate(const PowerLawKernel& k) {
    require(std::isfinite(k.amplitude) && k.amplitude >= 0.0,
            "power-law kernel: amplitude must be finite and >= 0");
    require(std::isfinite(k.offset) && k.offset > 0.0,
            "power-law kernel: offset must be finite and > 0");
    require(std::isfinite(k.exponent) && k.exponent > 1.0,
            "power-law kernel: exponent must be > 1 for a finite L1 norm");
}

void validate(const TableKernel& k) {
    require(k.knots.size() >= 2, "table kernel: at least two knots required");
    require(k.knots.front().t == 0.0, "table kernel: first knot must be at t = 0");
    for (std::size_t i = 0; i < k.knots.size(); ++i) {
        require(std::isfinite(k.knots[i].t) && std::isfinite(k.knots[i].value),
                "table kernel: knots must be finite");
        require(k.knots[i].value >= 0.0, "table kernel: values must be >= 0");
        if (i > 0) {
            require(k.knots[i].t > k.knots[i - 1].t,
                    "table kernel: knot times must be strictly increasing");
            require(k.knots[i].value <= k.knots[i - 1].value,
                    "table kernel: values must be non-increasing");
        }
    }
    require(k.knots.back().value == 0.0,
            "table kernel: last value must be 0 (compact support)");
}

double l1_of(const ExponentialKernel& k) { return k.amplitude / k.decay; }

double l1_of(const PowerLawKernel& k) {
    return k.amplitude * std::pow(k.offset, 1.0 - k.exponent) / (k.exponent - 1.0);
}

double l1_of(const TableKernel& k) {
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < k.knots.size(); ++i) {
        const double dt = k.knots[i + 1].t - k.knots[i].t;
        if (k.interp == TableInterp::Step) {
            total += k.knots[i].value * dt;
        } else {
            total += 0.5 * (k.knots[i].value + k.knots[i + 1].value) * dt;
        }
    }
    return total;
}

// Small inflation so the tail bound holds strictly despite rounding.
constexpr double kCutoffMargin = 1.0 + 1e-6;

double cutoff_of(const ExponentialKernel& k) {
    if (k.amplitude == 0.0) return 0.0;
    // tail(t)/l1 = exp(-decay t)
    return kCutoffMargin * -std::log(kTailFraction) / k.decay;
}

double cutoff_of(const PowerLawKernel& k) {
    if (k.amplitude == 0.0) return 0.0;
    // tail(t)/l1 = ((offset + t)/offset)^(1-exponent)
    const double growth = std::pow(kTailFraction, -1.0 / (k.exponent - 1.0));
    return kCutoffMargin * k.offset * (growth - 1.0);
}

double cutoff_of(const TableKernel& k) { return k.knots.back().t; }

double table_value(const TableKernel& k, double t) {
    const auto& knots = k.knots;
    if (t < 0.0 || t >= knots.back().t) return 0.0;
    // last knot with knot.t <= t
    auto it = std::upper_bound(knots.begin(), knots.end(), t,
                               [](double x, const TableKnot& kn) { return x < kn.t; });
    const std::size_t i = static_cast<std::size_t>(it - knots.begin()) - 1;
    if (k.interp == TableInterp::Step) return knots[i].value;
    const double span = knots[i + 1].t - knots[i].t;
    const double w = (t - knots[i].t) / span;
    return knots[i].value + w * (knots[i + 1].value - knots[i].value);
}

double table_tail(const TableKernel& k, double t) {
    const auto& knots = k.knots;
    if (t >= knots.back().t) return 0.0;
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        const double a = knots[i].t;
        const double b = knots[i + 1].t;
        if (b <= t) continue;
        const double lo = std::max(a, t);
        if (k.interp == TableInterp::Step) {
            total += knots[i].value * (b - lo);
        } else {
            const double h_lo = table_value(k, lo);
            total += 0.5 * (h_lo + knots[i + 1].value) * (b - lo);
        }
    }
    return total;
}

}  // namespace

Kernel::Kernel(KernelShape shape) : shape_(std::move(shape)) {
    std::visit([](const auto& k) { validate(k); }, shape_);
    l1_ = std::visit([](const auto& k) { return l1_of(k); }, shape_);
    cutoff_ = std::visit([](const auto& k) { return cutoff_of(k); }, shape_);
}

double Kernel::eval(double t) const {
    if (t < 0.0 || t > cutoff_) return 0.0;
    return std::visit(
        [t](const auto& k) -> double {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, ExponentialKernel>) {
                return k.amplitude * std::exp(-k.decay * t);
            } else if constexpr (std::is_same_v<T, PowerLawKernel>) {
                return k.amplitude * std::pow(k.offset + t, -k.exponent);
            } else {
                return table_value(k, t);
            }
        },
        shape_);
}

double Kernel::tail(double t) const {
    if (t < 0.0) throw std::invalid_argument("kernel tail requires t >= 0");
    return std::visit(
        [t](const auto& k) -> double {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, ExponentialKernel>) {
                return (k.amplitude / k.decay) * std::exp(-k.decay * t);
            } else if constexpr (std::is_same_v<T, PowerLawKernel>) {
                return k.amplitude * std::pow(k.offset + t, 1.0 - k.exponent) /
                       (k.exponent - 1.0);
            } else {
                return table_tail(k, t);
            }
        },
        shape_);
}

double Kernel::at_zero() const {
    return std::visit(
        [](const auto& k) -> double {
            using T = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<T, ExponentialKernel>) {
                return k.amplitude;
            } else if constexpr (std::is_same_v<T, PowerLawKernel>) {
                return k.amplitude * std::pow(k.offset, -k.exponent);
            } else {
                return k.knots.front().value;
            }
        },
        shape_);
}

bool Kernel::compact_support() const {
    return std::holds_alternative<TableKernel>(shape_);
}

Kernel exponential_kernel(double amplitude, double decay) {
    return Kernel(ExponentialKernel{amplitude, decay});
}

Kernel power_law_kernel(double amplitude, double offset, double exponent) {
    return Kernel(PowerLawKernel{amplitude, offset, exponent});
}

Kernel table_kernel(TableInterp interp, std::vector<TableKnot> knots) {
    return Kernel(TableKernel{interp, std::move(knots)});
}

}  // namespace hawkes

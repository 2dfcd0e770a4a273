#pragma once

#include <string>
#include <variant>
#include <vector>

namespace hawkes {

// h(t) = amplitude * exp(-decay * t)
struct ExponentialKernel {
    double amplitude = 0.0;
    double decay = 1.0;
};

// h(t) = amplitude * (offset + t)^(-exponent), exponent > 1 for integrability
struct PowerLawKernel {
    double amplitude = 0.0;
    double offset = 1.0;
    double exponent = 2.0;
};

enum class TableInterp { Step, Linear };

struct TableKnot {
    double t = 0.0;
    double value = 0.0;
};

// Piecewise kernel on [0, t_last] traced by knots. Step mode is right
// continuous (h = value[i] on [t[i], t[i+1])); Linear interpolates. Knot
// times start at 0 and increase strictly, values are non-negative and
// non-increasing, and the last value must be 0 so the support is compact.
struct TableKernel {
    TableInterp interp = TableInterp::Step;
    std::vector<TableKnot> knots;
};

using KernelShape = std::variant<ExponentialKernel, PowerLawKernel, TableKernel>;

// Exciting function h: non-negative, non-increasing on [0, inf), zero for
// t < 0, with a finite L1 norm. eval() truncates to zero beyond cutoff(),
// which is sized so the discarded tail mass is at most 1e-12 * l1().
class Kernel {
public:
    explicit Kernel(KernelShape shape);

    double eval(double t) const;
    double l1() const { return l1_; }
    double tail(double t) const;  // integral of h over [t, inf), t >= 0
    double cutoff() const { return cutoff_; }
    double at_zero() const;  // h(0)
    bool compact_support() const;
    const KernelShape& shape() const { return shape_; }

    bool is_exponential() const {
        return std::holds_alternative<ExponentialKernel>(shape_);
    }

private:
    KernelShape shape_;
    double l1_ = 0.0;
    double cutoff_ = 0.0;
};

Kernel exponential_kernel(double amplitude, double decay);
Kernel power_law_kernel(double amplitude, double offset, double exponent);
Kernel table_kernel(TableInterp interp, std::vector<TableKnot> knots);

}  // namespace hawkes

#pragma once

#include <variant>

namespace hawkes {

// lambda(z) = nu + slope * z
struct LinearRate {
    double nu = 0.0;
    double slope = 0.0;
};

// lambda(z) = nu + (cap - nu) * (1 - exp(-z / scale)), saturates at cap
struct SaturatingRate {
    double nu = 0.0;
    double cap = 1.0;
    double scale = 1.0;
};

// lambda(z) = min(nu + z, cap)
struct ClippedLinearRate {
    double nu = 0.0;
    double cap = 1.0;
};

using RateShape = std::variant<LinearRate, SaturatingRate, ClippedLinearRate>;

// Map from accumulated excitation z >= 0 to instantaneous intensity.
// Non-decreasing with lambda(0) = nu. Saturating and clipped shapes are
// sublinear (lambda(z)/z -> 0); a linear shape with positive slope is not,
// and is only admitted in subcritical combinations (checked by the model).
class RateFn {
public:
    explicit RateFn(RateShape shape);

    double eval(double z) const;  // rejects z < 0
    double lipschitz() const { return lipschitz_; }
    double lower_bound() const { return lower_bound_; }
    bool sublinear() const { return sublinear_; }
    const RateShape& shape() const { return shape_; }

private:
    RateShape shape_;
    double lipschitz_ = 0.0;
    double lower_bound_ = 0.0;
    bool sublinear_ = true;
};

RateFn linear_rate(double nu, double slope);
RateFn saturating_rate(double nu, double cap, double scale);
RateFn clipped_linear_rate(double nu, double cap);

}  // namespace hawkes

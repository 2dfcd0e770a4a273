#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "hawkes/kernel.hpp"
#include "hawkes/rate.hpp"

namespace hawkes {

// A (kernel, rate) pair defining one path law. Construction rejects the
// explosive regime: a linear rate with slope * ||h||_L1 >= 1 has no
// stationary version and its long-run mean diverges.
class IntensityModel {
public:
    IntensityModel(Kernel kernel, RateFn rate, std::string label)
        : kernel_(std::move(kernel)), rate_(std::move(rate)), label_(std::move(label)) {
        if (const auto* lin = std::get_if<LinearRate>(&rate_.shape())) {
            if (lin->slope > 0.0 && lin->slope * kernel_.l1() >= 1.0) {
                throw std::invalid_argument(
                    "linear rate with slope*l1 = " +
                    std::to_string(lin->slope * kernel_.l1()) + " >= 1: supercritical");
            }
        }
    }

    const Kernel& kernel() const { return kernel_; }
    const RateFn& rate() const { return rate_; }
    const std::string& label() const { return label_; }

private:
    Kernel kernel_;
    RateFn rate_;
    std::string label_;
};

// Convenience constructor for a homogeneous Poisson model (no excitation).
inline IntensityModel poisson_model(double nu, std::string label = "poisson") {
    return IntensityModel(exponential_kernel(0.0, 1.0), linear_rate(nu, 0.0),
                          std::move(label));
}

}  // namespace hawkes

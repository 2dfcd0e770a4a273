#include "hawkes/rate.hpp"

#include <cmath>
#include <stdexcept>

namespace hawkes {

namespace {

void require(bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(msg);
}

void validate(const LinearRate& r) {
    require(std::isfinite(r.nu) && r.nu >= 0.0, "linear rate: nu must be finite and >= 0");
    require(std::isfinite(r.slope) && r.slope >= 0.0,
            "linear rate: slope must be finite and >= 0");
}

void validate(const SaturatingRate& r) {
    require(std::isfinite(r.nu) && r.nu >= 0.0, "saturating rate: nu must be finite and >= 0");
    require(std::isfinite(r.cap) && r.cap > r.nu, "saturating rate: cap must exceed nu");
    require(std::isfinite(r.scale) && r.scale > 0.0, "saturating rate: scale must be > 0");
}

void validate(const ClippedLinearRate& r) {
    require(std::isfinite(r.nu) && r.nu >= 0.0, "clipped rate: nu must be finite and >= 0");
    require(std::isfinite(r.cap) && r.cap >= r.nu, "clipped rate: cap must be >= nu");
}

}  // namespace

RateFn::RateFn(RateShape shape) : shape_(std::move(shape)) {
    std::visit([](const auto& r) { validate(r); }, shape_);
    std::visit(
        [this](const auto& r) {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, LinearRate>) {
                lipschitz_ = r.slope;
                sublinear_ = (r.slope == 0.0);
            } else if constexpr (std::is_same_v<T, SaturatingRate>) {
                lipschitz_ = (r.cap - r.nu) / r.scale;  // slope at z = 0
                sublinear_ = true;
            } else {
                lipschitz_ = 1.0;
                sublinear_ = true;
            }
            lower_bound_ = r.nu;  // all shapes attain their minimum at z = 0
        },
        shape_);
}

double RateFn::eval(double z) const {
    if (z < 0.0) throw std::invalid_argument("rate function rejects negative excitation");
    return std::visit(
        [z](const auto& r) -> double {
            using T = std::decay_t<decltype(r)>;
            if constexpr (std::is_same_v<T, LinearRate>) {
                return r.nu + r.slope * z;
            } else if constexpr (std::is_same_v<T, SaturatingRate>) {
                return r.nu - (r.cap - r.nu) * std::expm1(-z / r.scale);
            } else {
                return std::min(r.nu + z, r.cap);
            }
        },
        shape_);
}

RateFn linear_rate(double nu, double slope) { return RateFn(LinearRate{nu, slope}); }

RateFn saturating_rate(double nu, double cap, double scale) {
    return RateFn(SaturatingRate{nu, cap, scale});
}

RateFn clipped_linear_rate(double nu, double cap) {
    return RateFn(ClippedLinearRate{nu, cap});
}

}  // namespace hawkes

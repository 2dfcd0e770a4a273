#include "hawkes/excitation.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hawkes {

ExcitationPath::ExcitationPath(const Kernel& kernel, const EventStream& stream)
    : kernel_(&kernel) {
    events_.reserve(stream.history().size() + stream.times().size());
    events_.insert(events_.end(), stream.history().begin(), stream.history().end());
    events_.insert(events_.end(), stream.times().begin(), stream.times().end());

    if (const auto* e = std::get_if<ExponentialKernel>(&kernel.shape())) {
        exponential_ = true;
        amplitude_ = e->amplitude;
        decay_ = e->decay;
        post_amp_.resize(events_.size());
        double amp = 0.0;
        double prev = 0.0;
        for (std::size_t j = 0; j < events_.size(); ++j) {
            if (j > 0) amp *= std::exp(-decay_ * (events_[j] - prev));
            amp += amplitude_;
            post_amp_[j] = amp;
            prev = events_[j];
        }
    }
}

double ExcitationPath::at(double s) const {
    if (exponential_) {
        // last event strictly before s
        auto it = std::lower_bound(events_.begin(), events_.end(), s);
        if (it == events_.begin()) return 0.0;
        const std::size_t j = static_cast<std::size_t>(it - events_.begin()) - 1;
        return post_amp_[j] * std::exp(-decay_ * (s - events_[j]));
    }
    const double lo = s - kernel_->cutoff();
    auto first = std::lower_bound(events_.begin(), events_.end(), lo);
    auto last = std::lower_bound(first, events_.end(), s);
    double z = 0.0;
    for (auto it = first; it != last; ++it) z += kernel_->eval(s - *it);
    return z;
}

double ExcitationPath::decayed_after(double s) const {
    if (!exponential_) {
        throw std::logic_error("decayed_after is only defined for exponential kernels");
    }
    auto it = std::upper_bound(events_.begin(), events_.end(), s);
    if (it == events_.begin()) return 0.0;
    const std::size_t j = static_cast<std::size_t>(it - events_.begin()) - 1;
    return post_amp_[j] * std::exp(-decay_ * (s - events_[j]));
}

}  // namespace hawkes

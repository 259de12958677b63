#include "cmauction/random.hpp"

#include "cmauction/error.hpp"

#include <algorithm>

namespace cmauction {

DiscreteSampler::DiscreteSampler(std::span<const double> probs) {
    cdf_.reserve(probs.size());
    double running = 0.0;
    bool any = false;
    for (std::size_t i = 0; i < probs.size(); ++i) {
        running += probs[i];
        cdf_.push_back(running);
        if (probs[i] > 0.0) {
            last_positive_ = i;
            any = true;
        }
    }
    if (!any) throw Error(ErrorKind::kInvalidArgument, "cannot sample from an all-zero vector");
}

std::size_t DiscreteSampler::operator()(Engine& rng) const {
    const double u = uniform01(rng) * cdf_.back();
    const auto it = std::upper_bound(cdf_.begin(), cdf_.end(), u);
    // Rounding can push u past the last positive entry; zero-mass tails are never drawn.
    return std::min(static_cast<std::size_t>(it - cdf_.begin()), last_positive_);
}

} // namespace cmauction

#include "leabra7/nxx1.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <utility>

namespace leabra7 {

namespace {
Scalar xx1(Scalar gain, Scalar x) {
    return x > 0.0 ? gain * x / (gain * x + 1.0) : 0.0;
}
}  // namespace

Nxx1Table::Nxx1Table(Scalar gain, Scalar noise_sd) {
    const auto n = static_cast<std::size_t>(std::lround((kHi - kLo) / kStep)) + 1;
    const auto half = static_cast<long>(std::ceil(6.0 * noise_sd / kStep));
    std::vector<Scalar> kernel(2 * half + 1);
    Scalar total = 0.0;
    for (long j = -half; j <= half; ++j) {
        const Scalar s = static_cast<Scalar>(j) * kStep / noise_sd;
        kernel[j + half] = std::exp(-0.5 * s * s);
        total += kernel[j + half];
    }
    for (auto& w : kernel) w /= total;

    table_.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        const Scalar x = kLo + static_cast<Scalar>(i) * kStep;
        Scalar acc = 0.0;
        for (long j = -half; j <= half; ++j) {
            acc += kernel[j + half] * xx1(gain, x - static_cast<Scalar>(j) * kStep);
        }
        table_[i] = acc;
    }
}

Scalar Nxx1Table::operator()(Scalar x) const {
    if (x <= kLo) return table_.front();
    if (x >= kHi) return table_.back();
    const Scalar pos = (x - kLo) / kStep;
    const auto i = static_cast<std::size_t>(pos);
    const Scalar t = pos - static_cast<Scalar>(i);
    return table_[i] * (1.0 - t) + table_[i + 1] * t;
}

std::shared_ptr<const Nxx1Table> Nxx1Table::get(Scalar gain, Scalar noise_sd) {
    static std::mutex mu;
    static std::map<std::pair<Scalar, Scalar>, std::shared_ptr<const Nxx1Table>>
        cache;
    std::lock_guard lock(mu);
    auto& slot = cache[{gain, noise_sd}];
    if (!slot) {
        slot = std::shared_ptr<const Nxx1Table>(new Nxx1Table(gain, noise_sd));
    }
    return slot;
}

Scalar nxx1(Scalar x, Scalar gain, Scalar noise_sd) {
    return (*Nxx1Table::get(gain, noise_sd))(x);
}

}  // namespace leabra7

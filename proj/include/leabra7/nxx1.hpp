#pragma once

#include <memory>
#include <vector>

#include "leabra7/types.hpp"

namespace leabra7 {

// Noisy X/(X+1) rate function: gain*x/(gain*x + 1) for x > 0 (else 0),
// convolved with a zero-mean Gaussian of width noise_sd. Values are
// precomputed on a fixed grid over [-0.1, 1.0] at 1e-4 resolution and
// linearly interpolated; queries outside the grid saturate at the
// endpoint values.
class Nxx1Table {
  public:
    // Tables are immutable and cached per (gain, noise_sd).
    static std::shared_ptr<const Nxx1Table> get(Scalar gain, Scalar noise_sd);

    Scalar operator()(Scalar x) const;

    static constexpr Scalar kLo = -0.1;
    static constexpr Scalar kHi = 1.0;
    static constexpr Scalar kStep = 1e-4;

  private:
    Nxx1Table(Scalar gain, Scalar noise_sd);
    std::vector<Scalar> table_;
};

// Convenience single-value evaluation through the cache.
Scalar nxx1(Scalar x, Scalar gain, Scalar noise_sd);

}  // namespace leabra7

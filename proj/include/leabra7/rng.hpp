#pragma once

#include <cstdint>
#include <random>
#include <string>

#include "leabra7/types.hpp"

namespace leabra7 {

// Thin wrapper over mt19937_64 with self-contained sampling, so that a
// given seed produces bit-identical streams on every platform (the
// std::*_distribution adapters are implementation-defined).
class Rng {
  public:
    explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

    // Uniform on [0, 1) with 53-bit resolution.
    Scalar canonical() {
        return static_cast<Scalar>(engine_() >> 11) * 0x1.0p-53;
    }

    Scalar uniform(Scalar lo, Scalar hi) {
        return lo + (hi - lo) * canonical();
    }

    // Marsaglia polar method; deterministic draw count per pair.
    Scalar gaussian(Scalar mean, Scalar sd);

    std::uint64_t raw() { return engine_(); }

    // Engine state round-trips through text for persistence.
    std::string state() const;
    void set_state(const std::string& s);

  private:
    std::mt19937_64 engine_;
    bool have_spare_ = false;
    Scalar spare_ = 0.0;
};

}  // namespace leabra7

#pragma once

#include <string>

#include "leabra7/specs.hpp"

namespace leabra7 {

// Spec overrides parsed from an INI-style config file. Sections [unit],
// [layer], and [projn] hold key = value lines whose keys are the spec
// field names; an unknown section or key is an error, not a warning.
//
//   [unit]
//   adapt_dt = 0
//   [layer]
//   gi = 1.5
//   inhibition_type = fffb
//   log_on_epoch = unit_act, unit_avg_s
//   [projn]
//   lrate = 0.04
//   dist = Uniform(0.25, 0.75)
struct Config {
    UnitSpec unit;
    LayerSpec layer;
    ProjnSpec projn;

    // Starts from the given baselines and applies the file's overrides.
    static Config parse_file(const std::string& path, const UnitSpec& unit,
                             const LayerSpec& layer, const ProjnSpec& projn);
    static Config parse_string(const std::string& text, const UnitSpec& unit,
                               const LayerSpec& layer, const ProjnSpec& projn);
};

Dist parse_dist(const std::string& text);

}  // namespace leabra7

#pragma once

#include <string>

#include "leabra7/specs.hpp"
#include "leabra7/types.hpp"
#include "leabra7/unit_group.hpp"

namespace leabra7 {

// Inhibition arithmetic, exposed for direct testing.
Scalar compute_ffi(Scalar avg_net, const LayerSpec& spec);
Scalar next_fbi(Scalar fbi, Scalar avg_act, const LayerSpec& spec);
Scalar combine_gc_i(Scalar ffi, Scalar fbi, const LayerSpec& spec);
// Inhibitory conductance that leaves exactly k units above threshold.
Scalar kwta_gc_i(const UnitGroup& units, int k);

class Layer {
  public:
    Layer(std::string name, Index size, const LayerSpec& spec);

    const std::string& name() const { return name_; }
    Index size() const { return units_.size(); }
    const LayerSpec& spec() const { return spec_; }

    // Projections deposit raw input here; consumed by the next cycle.
    void add_input(const Array& x);

    // One network cycle, split so the orchestrator can sequence layers:
    // inhibition from start-of-cycle aggregates, then unit updates, then
    // aggregate refresh once all layers have flushed.
    void compute_inhibition();
    void update_units();
    void update_aggregates();

    // Plus-phase bookkeeping: acts_p_avg then per-unit avg_l.
    void end_plus_phase();

    void clamp(const Array& pattern);
    void unclamp();
    bool clamped() const { return clamped_; }

    Scalar fbi() const { return fbi_; }
    Scalar gc_i() const { return gc_i_; }
    Scalar avg_net() const { return avg_net_; }
    Scalar avg_act() const { return avg_act_; }
    Scalar acts_p_avg() const { return acts_p_avg_; }

    UnitGroup& units() { return units_; }
    const UnitGroup& units() const { return units_; }

    // Observation by documented attribute name.
    Array unit_attribute(const std::string& name) const;
    Scalar layer_attribute(const std::string& name) const;

  private:
    friend class Net;  // persistence restores scalar state directly

    std::string name_;
    LayerSpec spec_;
    UnitGroup units_;
    Scalar fbi_ = 0.0;
    Scalar gc_i_ = 0.0;
    Scalar avg_net_ = 0.0;
    Scalar avg_act_ = 0.0;
    Scalar acts_p_avg_ = 0.0;
    bool clamped_ = false;
    Array clamp_pattern_;
};

}  // namespace leabra7

#pragma once

#include <memory>

#include "leabra7/nxx1.hpp"
#include "leabra7/specs.hpp"
#include "leabra7/types.hpp"

namespace leabra7 {

// Dense per-unit state for one layer. All dynamics operate on whole
// arrays; units never depend on each other within a cycle, so the update
// order inside a group is immaterial.
struct UnitGroup {
    UnitGroup(Index n, const UnitSpec& spec);

    Index size() const { return net.size(); }

    UnitSpec spec;
    std::shared_ptr<const Nxx1Table> rate_fn;

    Array net;        // integrated net input
    Array input_acc;  // raw input accumulated since last cycle
    Array i_net;      // net current driving v_m
    Array v_m;        // spiking membrane potential (resets on spike)
    Array v_m_eq;     // equilibrium potential (never resets)
    Array act;        // rate-coded activation
    Array spike;      // 1 on spike cycles, else 0
    Array adapt;      // adaptation current
    Array avg_ss;     // cascading activation averages
    Array avg_s;
    Array avg_m;
    Array avg_l;      // long-term average, updated per trial
};

// One cycle of dynamics, in the order the network applies them.
void integrate_net(UnitGroup& u);
void update_membrane(UnitGroup& u, Scalar gc_i);
void update_spike_and_act(UnitGroup& u, Scalar gc_i);
void update_adapt(UnitGroup& u);
void update_cycle_averages(UnitGroup& u);

// Clamped layers force act and skip the membrane/spike/adapt path.
void force_act(UnitGroup& u, const Array& pattern);

// Excitatory conductance that would put each unit exactly at threshold.
Array g_e_theta(const UnitGroup& u, Scalar gc_i);

// Trial-frequency long-term average update.
void update_avg_l(UnitGroup& u, Scalar acts_p_avg);

}  // namespace leabra7

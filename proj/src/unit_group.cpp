#include "leabra7/unit_group.hpp"

#include <stdexcept>

namespace leabra7 {

UnitGroup::UnitGroup(Index n, const UnitSpec& s) : spec(s) {
    if (n < 1) throw std::invalid_argument("unit group size must be >= 1");
    spec.validate();
    rate_fn = Nxx1Table::get(spec.gain, spec.noise_sd);
    net = Array::Zero(n);
    input_acc = Array::Zero(n);
    i_net = Array::Zero(n);
    v_m = Array::Constant(n, spec.e_rev_l);
    v_m_eq = Array::Constant(n, spec.e_rev_l);
    act = Array::Zero(n);
    spike = Array::Zero(n);
    adapt = Array::Zero(n);
    avg_ss = Array::Zero(n);
    avg_s = Array::Zero(n);
    avg_m = Array::Zero(n);
    avg_l = Array::Zero(n);
}

void integrate_net(UnitGroup& u) {
    u.net += u.spec.integ * u.spec.net_dt * (u.input_acc - u.net);
    u.input_acc.setZero();
}

void update_membrane(UnitGroup& u, Scalar gc_i) {
    const auto& s = u.spec;
    u.i_net = u.net * (s.e_rev_e - u.v_m) + s.gc_l * (s.e_rev_l - u.v_m) +
              gc_i * (s.e_rev_i - u.v_m);
    u.v_m += (s.integ * s.vm_dt * u.i_net).min(100.0).max(-100.0);
    // v_m_eq follows the same rule from its own current; it never resets,
    // so the two trajectories are independent integrations.
    const Array i_net_eq = u.net * (s.e_rev_e - u.v_m_eq) +
                           s.gc_l * (s.e_rev_l - u.v_m_eq) +
                           gc_i * (s.e_rev_i - u.v_m_eq);
    u.v_m_eq += (s.integ * s.vm_dt * i_net_eq).min(100.0).max(-100.0);
}

Array g_e_theta(const UnitGroup& u, Scalar gc_i) {
    const auto& s = u.spec;
    return (gc_i * (s.e_rev_i - s.spk_thr) + s.gc_l * (s.e_rev_l - s.spk_thr) -
            u.adapt) /
           (s.spk_thr - s.e_rev_e);
}

void update_spike_and_act(UnitGroup& u, Scalar gc_i) {
    const auto& s = u.spec;
    const Array thr = g_e_theta(u, gc_i);
    const auto& f = *u.rate_fn;
    for (Index i = 0; i < u.size(); ++i) {
        if (u.v_m[i] > s.spk_thr) {
            u.v_m[i] = s.v_m_r;
            u.spike[i] = 1.0;
        } else {
            u.spike[i] = 0.0;
        }
        const Scalar new_act = u.v_m_eq[i] < s.spk_thr
                                   ? f(u.v_m_eq[i] - s.spk_thr)
                                   : f(u.net[i] - thr[i]);
        u.act[i] += s.integ * s.vm_dt * (new_act - u.act[i]);
    }
}

void update_adapt(UnitGroup& u) {
    const auto& s = u.spec;
    u.adapt += s.integ * s.adapt_dt * (s.vm_gain * (u.v_m - s.e_rev_l) - u.adapt) +
               u.spike * s.spike_gain;
}

void update_cycle_averages(UnitGroup& u) {
    const auto& s = u.spec;
    u.avg_ss += s.integ * s.ss_dt * (u.act - u.avg_ss);
    u.avg_s += s.integ * s.s_dt * (u.avg_ss - u.avg_s);
    u.avg_m += s.integ * s.m_dt * (u.avg_s - u.avg_m);
}

void force_act(UnitGroup& u, const Array& pattern) {
    u.act = pattern;
    u.spike.setZero();
}

void update_avg_l(UnitGroup& u, Scalar acts_p_avg) {
    const auto& s = u.spec;
    for (Index i = 0; i < u.size(); ++i) {
        if (u.avg_m[i] > 0.1) {
            u.avg_l[i] += u.avg_m[i] * s.l_up_inc;
        } else {
            u.avg_l[i] += acts_p_avg * s.l_dn_dt * (u.avg_m[i] - u.avg_l[i]);
        }
    }
}

}  // namespace leabra7

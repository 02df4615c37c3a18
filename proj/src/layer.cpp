#include "leabra7/layer.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>
#include <vector>

namespace leabra7 {

Scalar compute_ffi(Scalar avg_net, const LayerSpec& spec) {
    return spec.ff * std::max(avg_net - spec.ff0, 0.0);
}

Scalar next_fbi(Scalar fbi, Scalar avg_act, const LayerSpec& spec) {
    return fbi + spec.fb_dt * (spec.fb * avg_act - fbi);
}

Scalar combine_gc_i(Scalar ffi, Scalar fbi, const LayerSpec& spec) {
    if (spec.inhibition_combine == InhibitionCombine::sum) {
        return spec.gi * (ffi + fbi);
    }
    return spec.gi * (ffi * fbi);
}

Scalar kwta_gc_i(const UnitGroup& units, int k) {
    const Index n = units.size();
    if (k == n) return 0.0;
    // Per-unit inhibition that would hold the unit exactly at threshold,
    // given its current drive: the inverse of g_e_theta in gc_i.
    const auto& s = units.spec;
    std::vector<Scalar> thr(static_cast<std::size_t>(n));
    for (Index i = 0; i < n; ++i) {
        thr[static_cast<std::size_t>(i)] =
            (units.net[i] * (s.spk_thr - s.e_rev_e) -
             s.gc_l * (s.e_rev_l - s.spk_thr) + units.adapt[i]) /
            (s.e_rev_i - s.spk_thr);
    }
    std::sort(thr.begin(), thr.end(), std::greater<>());
    constexpr Scalar q = 0.25;
    const Scalar gk = thr[static_cast<std::size_t>(k - 1)];
    const Scalar gk1 = thr[static_cast<std::size_t>(k)];
    return std::max(gk1 + q * (gk - gk1), 0.0);
}

Layer::Layer(std::string name, Index size, const LayerSpec& spec)
    : name_(std::move(name)), spec_(spec), units_(size, spec.unit_spec) {
    spec_.validate();
    if (spec_.inhibition_type == InhibitionType::kwta &&
        spec_.k > static_cast<int>(size)) {
        throw std::invalid_argument("spec field k must be <= layer size");
    }
}

void Layer::add_input(const Array& x) {
    if (x.size() != units_.size()) {
        throw std::invalid_argument("input length does not match layer " +
                                    name_);
    }
    units_.input_acc += x;
}

void Layer::compute_inhibition() {
    if (spec_.inhibition_type == InhibitionType::kwta) {
        gc_i_ = kwta_gc_i(units_, spec_.k);
        return;
    }
    const Scalar ffi = compute_ffi(avg_net_, spec_);
    fbi_ = next_fbi(fbi_, avg_act_, spec_);
    gc_i_ = combine_gc_i(ffi, fbi_, spec_);
}

void Layer::update_units() {
    integrate_net(units_);
    if (clamped_) {
        force_act(units_, clamp_pattern_);
    } else {
        update_membrane(units_, gc_i_);
        update_spike_and_act(units_, gc_i_);
        update_adapt(units_);
    }
    update_cycle_averages(units_);
}

void Layer::update_aggregates() {
    avg_net_ = units_.net.mean();
    avg_act_ = units_.act.mean();
}

void Layer::end_plus_phase() {
    acts_p_avg_ += 0.5 * (avg_act_ - acts_p_avg_);
    update_avg_l(units_, acts_p_avg_);
}

void Layer::clamp(const Array& pattern) {
    if (pattern.size() != units_.size()) {
        throw std::invalid_argument("clamp pattern length does not match layer " +
                                    name_);
    }
    if ((pattern < 0.0).any() || (pattern > 1.0).any()) {
        throw std::invalid_argument("clamp pattern entries must lie in [0, 1]");
    }
    clamped_ = true;
    clamp_pattern_ = pattern;
}

void Layer::unclamp() { clamped_ = false; }

Array Layer::unit_attribute(const std::string& name) const {
    if (name == "unit_net") return units_.net;
    if (name == "unit_i_net") return units_.i_net;
    if (name == "unit_v_m") return units_.v_m;
    if (name == "unit_v_m_eq") return units_.v_m_eq;
    if (name == "unit_act") return units_.act;
    if (name == "unit_spike") return units_.spike;
    if (name == "unit_adapt") return units_.adapt;
    if (name == "unit_gc_i") return Array::Constant(units_.size(), gc_i_);
    if (name == "unit_avg_ss") return units_.avg_ss;
    if (name == "unit_avg_s") return units_.avg_s;
    if (name == "unit_avg_m") return units_.avg_m;
    if (name == "unit_avg_l") return units_.avg_l;
    throw std::invalid_argument("unknown unit attribute " + name);
}

Scalar Layer::layer_attribute(const std::string& name) const {
    if (name == "avg_act") return avg_act_;
    if (name == "avg_net") return avg_net_;
    if (name == "fbi") return fbi_;
    if (name == "gc_i") return gc_i_;
    if (name == "acts_p_avg") return acts_p_avg_;
    throw std::invalid_argument("unknown layer attribute " + name);
}

}  // namespace leabra7

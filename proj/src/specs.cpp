#include "leabra7/specs.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace leabra7 {

namespace {

[[noreturn]] void fail(const std::string& field, const std::string& bound) {
    throw std::invalid_argument("spec field " + field + " must be " + bound);
}

void check(bool ok, const char* field, const char* bound) {
    if (!ok) fail(field, bound);
}

}  // namespace

Scalar sample(const Dist& dist, Rng& rng) {
    if (const auto* u = std::get_if<Uniform>(&dist)) {
        return rng.uniform(u->lo, u->hi);
    }
    if (const auto* c = std::get_if<Constant>(&dist)) {
        return c->c;
    }
    const auto& g = std::get<Gaussian>(dist);
    return std::clamp(rng.gaussian(g.mean, g.sd), 0.0, 1.0);
}

void validate_dist(const Dist& dist) {
    if (const auto* u = std::get_if<Uniform>(&dist)) {
        check(0.0 <= u->lo && u->lo <= u->hi && u->hi <= 1.0, "dist",
              "Uniform with 0 <= lo <= hi <= 1");
    } else if (const auto* c = std::get_if<Constant>(&dist)) {
        check(0.0 <= c->c && c->c <= 1.0, "dist", "Constant within [0, 1]");
    } else {
        check(std::get<Gaussian>(dist).sd > 0.0, "dist",
              "Gaussian with sd > 0");
    }
}

void UnitSpec::validate() const {
    check(integ > 0.0, "integ", "> 0");
    check(net_dt > 0.0 && net_dt <= 1.0, "net_dt", "in (0, 1]");
    check(vm_dt > 0.0 && vm_dt <= 1.0, "vm_dt", "in (0, 1]");
    check(ss_dt > 0.0 && ss_dt <= 1.0, "ss_dt", "in (0, 1]");
    check(s_dt > 0.0 && s_dt <= 1.0, "s_dt", "in (0, 1]");
    check(m_dt > 0.0 && m_dt <= 1.0, "m_dt", "in (0, 1]");
    // adapt_dt = 0 switches adaptation off; the reference configurations
    // rely on it.
    check(adapt_dt >= 0.0 && adapt_dt <= 1.0, "adapt_dt", "in [0, 1]");
    check(l_dn_dt > 0.0 && l_dn_dt <= 1.0, "l_dn_dt", "in (0, 1]");
    check(l_up_inc >= 0.0, "l_up_inc", ">= 0");
    check(gc_l >= 0.0, "gc_l", ">= 0");
    check(vm_gain >= 0.0, "vm_gain", ">= 0");
    check(spike_gain >= 0.0, "spike_gain", ">= 0");
    check(e_rev_i <= e_rev_l, "e_rev_i", "<= e_rev_l");
    check(e_rev_l < spk_thr, "e_rev_l", "< spk_thr");
    check(spk_thr < e_rev_e, "spk_thr", "< e_rev_e");
    check(v_m_r < spk_thr, "v_m_r", "< spk_thr");
    check(gain > 0.0, "gain", "> 0");
    check(noise_sd > 0.0, "noise_sd", "> 0");
}

void LayerSpec::validate() const {
    check(gi >= 0.0, "gi", ">= 0");
    check(ff >= 0.0, "ff", ">= 0");
    check(ff0 >= 0.0, "ff0", ">= 0");
    check(fb >= 0.0, "fb", ">= 0");
    check(fb_dt > 0.0 && fb_dt <= 1.0, "fb_dt", "in (0, 1]");
    check(k >= 1, "k", ">= 1");
    for (const auto* list : {&log_on_cycle, &log_on_trial, &log_on_epoch}) {
        for (const auto& name : *list) {
            if (!is_unit_attribute(name) && !is_layer_attribute(name)) {
                throw std::invalid_argument("unknown log attribute " + name);
            }
        }
    }
    unit_spec.validate();
}

void ProjnSpec::validate() const {
    // lrate = 0 is legal and makes learn() the identity.
    check(lrate >= 0.0, "lrate", ">= 0");
    validate_dist(dist);
    check(thr_l_mix >= 0.0 && thr_l_mix <= 1.0, "thr_l_mix", "in [0, 1]");
    check(s_mix >= 0.0 && s_mix <= 1.0, "s_mix", "in [0, 1]");
    check(sig_offset > 0.0, "sig_offset", "> 0");
    check(sig_gain > 0.0, "sig_gain", "> 0");
    check(wt_scale_rel > 0.0, "wt_scale_rel", "> 0");
    check(d_rev > 0.0 && d_rev < 1.0, "d_rev", "in (0, 1)");
}

const std::vector<std::string>& unit_attributes() {
    static const std::vector<std::string> names = {
        "unit_net",  "unit_i_net", "unit_v_m",    "unit_v_m_eq",
        "unit_act",  "unit_spike", "unit_adapt",  "unit_gc_i",
        "unit_avg_ss", "unit_avg_s", "unit_avg_m", "unit_avg_l"};
    return names;
}

const std::vector<std::string>& layer_attributes() {
    static const std::vector<std::string> names = {
        "avg_act", "avg_net", "fbi", "gc_i", "acts_p_avg"};
    return names;
}

const std::vector<std::string>& conn_attributes() {
    static const std::vector<std::string> names = {"conn_wt", "conn_fwt",
                                                   "conn_dwt"};
    return names;
}

namespace {
bool contains(const std::vector<std::string>& v, const std::string& s) {
    return std::find(v.begin(), v.end(), s) != v.end();
}
}  // namespace

bool is_unit_attribute(const std::string& name) {
    return contains(unit_attributes(), name);
}
bool is_layer_attribute(const std::string& name) {
    return contains(layer_attributes(), name);
}
bool is_conn_attribute(const std::string& name) {
    return contains(conn_attributes(), name);
}

}  // namespace leabra7

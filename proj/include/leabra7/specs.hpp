#pragma once

#include <string>
#include <variant>
#include <vector>

#include "leabra7/rng.hpp"
#include "leabra7/types.hpp"

namespace leabra7 {

// Initial weight distributions. Samples are confined to [0,1]; Gaussian
// draws are clipped to that interval.
struct Uniform {
    Scalar lo = 0.0;
    Scalar hi = 1.0;
};
struct Constant {
    Scalar c = 0.0;
};
struct Gaussian {
    Scalar mean = 0.5;
    Scalar sd = 0.1;
};
using Dist = std::variant<Uniform, Constant, Gaussian>;

Scalar sample(const Dist& dist, Rng& rng);
void validate_dist(const Dist& dist);

struct UnitSpec {
    Scalar integ = 1.0;           // global integration time constant
    Scalar net_dt = 0.7;          // net input rate
    Scalar vm_dt = 1.0 / 3.3;     // membrane potential rate
    Scalar gc_l = 0.1;            // leak conductance
    Scalar e_rev_e = 1.0;         // excitatory reversal potential
    Scalar e_rev_l = 0.3;         // leak reversal potential
    Scalar e_rev_i = 0.25;        // inhibitory reversal potential
    Scalar spk_thr = 0.5;         // spike threshold potential
    Scalar v_m_r = 0.3;           // post-spike reset potential
    Scalar vm_gain = 0.04;        // adaptation potential gain
    Scalar spike_gain = 0.005;    // adaptation per-spike increment
    Scalar adapt_dt = 1.0 / 144.0;  // adaptation rate; 0 disables
    Scalar ss_dt = 0.5;           // super-short average rate
    Scalar s_dt = 0.5;            // short average rate
    Scalar m_dt = 0.1;            // medium average rate
    Scalar l_up_inc = 0.2;        // avg_l upward increment
    Scalar l_dn_dt = 0.4;         // avg_l downward rate
    Scalar gain = 100.0;          // nxx1 gain
    Scalar noise_sd = 0.005;      // nxx1 convolution noise

    void validate() const;
};

enum class InhibitionType { fffb, kwta };
enum class InhibitionCombine { product, sum };

struct LayerSpec {
    Scalar gi = 1.8;             // global inhibition multiplier
    Scalar ff = 1.0;             // feedforward multiplier
    Scalar ff0 = 0.1;            // feedforward offset
    Scalar fb = 1.0;             // feedback multiplier
    Scalar fb_dt = 1.0 / 1.4;    // feedback integration rate
    InhibitionType inhibition_type = InhibitionType::fffb;
    InhibitionCombine inhibition_combine = InhibitionCombine::product;
    int k = 1;                   // winner count for kwta
    std::vector<std::string> log_on_cycle;
    std::vector<std::string> log_on_trial;
    std::vector<std::string> log_on_epoch;
    UnitSpec unit_spec;

    void validate() const;
};

struct ProjnSpec {
    Scalar lrate = 0.02;         // learning rate; 0 disables learning
    Dist dist = Uniform{0.25, 0.75};
    Scalar thr_l_mix = 0.1;      // Hebbian threshold mix fraction
    Scalar s_mix = 0.9;          // short-term mix fraction
    Scalar sig_offset = 1.0;     // contrast-enhancement offset
    Scalar sig_gain = 6.0;       // contrast-enhancement gain
    Scalar wt_scale_rel = 1.0;   // relative net-input scaling
    Scalar d_rev = 0.1;          // XCAL reversal fraction
    bool cos_diff_lrate = false;      // accepted for config parity; no effect
    bool cos_diff_thr_l_mix = false;  // accepted for config parity; no effect

    void validate() const;
};

// Attribute catalogs for logging and observation.
const std::vector<std::string>& unit_attributes();   // unit_* (per-unit)
const std::vector<std::string>& layer_attributes();  // whole-layer
const std::vector<std::string>& conn_attributes();   // conn_* (per-connection)
bool is_unit_attribute(const std::string& name);
bool is_layer_attribute(const std::string& name);
bool is_conn_attribute(const std::string& name);

}  // namespace leabra7

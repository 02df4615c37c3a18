#include "leabra7/config.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace leabra7 {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

Scalar parse_double(const std::string& key, const std::string& value) {
    std::size_t used = 0;
    Scalar v;
    try {
        v = std::stod(value, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("config key " + key +
                                    ": cannot parse number '" + value + "'");
    }
    if (trim(value.substr(used)) != "") {
        throw std::invalid_argument("config key " + key +
                                    ": cannot parse number '" + value + "'");
    }
    return v;
}

int parse_int(const std::string& key, const std::string& value) {
    Scalar v = parse_double(key, value);
    int i = static_cast<int>(v);
    if (static_cast<Scalar>(i) != v) {
        throw std::invalid_argument("config key " + key +
                                    ": expected an integer, got '" + value +
                                    "'");
    }
    return i;
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw std::invalid_argument("config key " + key +
                                ": expected true or false, got '" + value +
                                "'");
}

std::vector<std::string> parse_list(const std::string& value) {
    std::vector<std::string> items;
    std::stringstream ss(value);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) items.push_back(item);
    }
    return items;
}

bool apply_unit_key(UnitSpec& s, const std::string& key,
                    const std::string& value) {
    auto num = [&] { return parse_double(key, value); };
    if (key == "integ") s.integ = num();
    else if (key == "net_dt") s.net_dt = num();
    else if (key == "vm_dt") s.vm_dt = num();
    else if (key == "gc_l") s.gc_l = num();
    else if (key == "e_rev_e") s.e_rev_e = num();
    else if (key == "e_rev_l") s.e_rev_l = num();
    else if (key == "e_rev_i") s.e_rev_i = num();
    else if (key == "spk_thr") s.spk_thr = num();
    else if (key == "v_m_r") s.v_m_r = num();
    else if (key == "vm_gain") s.vm_gain = num();
    else if (key == "spike_gain") s.spike_gain = num();
    else if (key == "adapt_dt") s.adapt_dt = num();
    else if (key == "ss_dt") s.ss_dt = num();
    else if (key == "s_dt") s.s_dt = num();
    else if (key == "m_dt") s.m_dt = num();
    else if (key == "l_up_inc") s.l_up_inc = num();
    else if (key == "l_dn_dt") s.l_dn_dt = num();
    else if (key == "gain") s.gain = num();
    else if (key == "noise_sd") s.noise_sd = num();
    else return false;
    return true;
}

bool apply_layer_key(LayerSpec& s, const std::string& key,
                     const std::string& value) {
    auto num = [&] { return parse_double(key, value); };
    if (key == "gi") s.gi = num();
    else if (key == "ff") s.ff = num();
    else if (key == "ff0") s.ff0 = num();
    else if (key == "fb") s.fb = num();
    else if (key == "fb_dt") s.fb_dt = num();
    else if (key == "k") s.k = parse_int(key, value);
    else if (key == "inhibition_type") {
        if (value == "fffb") s.inhibition_type = InhibitionType::fffb;
        else if (value == "kwta") s.inhibition_type = InhibitionType::kwta;
        else throw std::invalid_argument(
            "config key inhibition_type: expected fffb or kwta, got '" +
            value + "'");
    } else if (key == "inhibition_combine") {
        if (value == "product")
            s.inhibition_combine = InhibitionCombine::product;
        else if (value == "sum") s.inhibition_combine = InhibitionCombine::sum;
        else throw std::invalid_argument(
            "config key inhibition_combine: expected product or sum, got '" +
            value + "'");
    } else if (key == "log_on_cycle") s.log_on_cycle = parse_list(value);
    else if (key == "log_on_trial") s.log_on_trial = parse_list(value);
    else if (key == "log_on_epoch") s.log_on_epoch = parse_list(value);
    else return false;
    return true;
}

bool apply_projn_key(ProjnSpec& s, const std::string& key,
                     const std::string& value) {
    auto num = [&] { return parse_double(key, value); };
    if (key == "lrate") s.lrate = num();
    else if (key == "thr_l_mix") s.thr_l_mix = num();
    else if (key == "s_mix") s.s_mix = num();
    else if (key == "sig_offset") s.sig_offset = num();
    else if (key == "sig_gain") s.sig_gain = num();
    else if (key == "wt_scale_rel") s.wt_scale_rel = num();
    else if (key == "d_rev") s.d_rev = num();
    else if (key == "dist") s.dist = parse_dist(value);
    else if (key == "cos_diff_lrate") s.cos_diff_lrate = parse_bool(key, value);
    else if (key == "cos_diff_thr_l_mix")
        s.cos_diff_thr_l_mix = parse_bool(key, value);
    else return false;
    return true;
}

}  // namespace

Dist parse_dist(const std::string& text) {
    std::string s = trim(text);
    auto open = s.find('(');
    if (open == std::string::npos || s.back() != ')') {
        throw std::invalid_argument("cannot parse distribution '" + text +
                                    "'");
    }
    std::string name = trim(s.substr(0, open));
    std::string args_text = s.substr(open + 1, s.size() - open - 2);
    std::vector<Scalar> args;
    for (const auto& a : parse_list(args_text)) {
        args.push_back(parse_double("dist", a));
    }
    if (name == "Uniform" && args.size() == 2) {
        return Uniform{args[0], args[1]};
    }
    if (name == "Constant" && args.size() == 1) {
        return Constant{args[0]};
    }
    if (name == "Gaussian" && args.size() == 2) {
        return Gaussian{args[0], args[1]};
    }
    throw std::invalid_argument("cannot parse distribution '" + text + "'");
}

Config Config::parse_string(const std::string& text, const UnitSpec& unit,
                            const LayerSpec& layer, const ProjnSpec& projn) {
    Config cfg{unit, layer, projn};
    std::istringstream in(text);
    std::string raw;
    std::string section;
    int line_no = 0;
    while (std::getline(in, raw)) {
        ++line_no;
        std::string line = trim(raw);
        if (line.empty() || line[0] == '#' || line[0] == ';') continue;
        if (line.front() == '[') {
            if (line.back() != ']') {
                throw std::invalid_argument(
                    "config line " + std::to_string(line_no) +
                    ": malformed section header");
            }
            section = trim(line.substr(1, line.size() - 2));
            if (section != "unit" && section != "layer" &&
                section != "projn") {
                throw std::invalid_argument("unknown config section [" +
                                            section + "]");
            }
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " +
                                        std::to_string(line_no) +
                                        ": expected key = value");
        }
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (section.empty()) {
            throw std::invalid_argument("config key " + key +
                                        " appears before any section");
        }
        bool known = false;
        if (section == "unit") known = apply_unit_key(cfg.unit, key, value);
        if (section == "layer") known = apply_layer_key(cfg.layer, key, value);
        if (section == "projn") known = apply_projn_key(cfg.projn, key, value);
        if (!known) {
            throw std::invalid_argument("unknown key " + key + " in [" +
                                        section + "]");
        }
    }
    cfg.layer.unit_spec = cfg.unit;
    cfg.unit.validate();
    cfg.layer.validate();
    cfg.projn.validate();
    return cfg;
}

Config Config::parse_file(const std::string& path, const UnitSpec& unit,
                          const LayerSpec& layer, const ProjnSpec& projn) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path + " for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_string(ss.str(), unit, layer, projn);
}

}  // namespace leabra7

#include "leabra7/net.hpp"

#include <cstring>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace leabra7 {

LogFreq log_freq_from_string(const std::string& s) {
    if (s == "cycle") return LogFreq::cycle;
    if (s == "trial") return LogFreq::trial;
    if (s == "epoch") return LogFreq::epoch;
    throw std::invalid_argument("unknown log frequency " + s);
}

Net::Net(std::uint64_t seed) : rng_(seed) {}

Index Net::layer_index(const std::string& name) const {
    auto it = layer_lookup_.find(name);
    if (it == layer_lookup_.end()) {
        throw std::invalid_argument("unknown layer " + name);
    }
    return it->second;
}

Layer& Net::layer(const std::string& name) {
    return *layers_[layer_index(name)];
}

const Layer& Net::layer(const std::string& name) const {
    return *layers_[layer_index(name)];
}

Projection& Net::projn(const std::string& name) {
    auto it = projn_lookup_.find(name);
    if (it == projn_lookup_.end()) {
        throw std::invalid_argument("unknown projection " + name);
    }
    return *projns_[it->second].projn;
}

const Projection& Net::projn(const std::string& name) const {
    return const_cast<Net*>(this)->projn(name);
}

LogFrame Net::make_frame(const std::vector<std::string>& attrs) const {
    LogFrame frame;
    for (const auto& attr : attrs) {
        if (is_unit_attribute(attr)) {
            frame.part_attributes.push_back(attr);
        } else {
            frame.whole_attributes.push_back(attr);
        }
    }
    return frame;
}

void Net::new_layer(const std::string& name, Index size,
                    const LayerSpec& spec) {
    if (layer_lookup_.count(name) || projn_lookup_.count(name)) {
        throw std::invalid_argument("duplicate name " + name);
    }
    layers_.push_back(std::make_unique<Layer>(name, size, spec));
    layer_lookup_[name] = static_cast<Index>(layer_names_.size());
    layer_names_.push_back(name);
    LayerLogs lg;
    lg.cycle = make_frame(spec.log_on_cycle);
    lg.trial = make_frame(spec.log_on_trial);
    lg.epoch = make_frame(spec.log_on_epoch);
    logs_.push_back(std::move(lg));
}

void Net::new_projn(const std::string& name, const std::string& pre,
                    const std::string& post, const ProjnSpec& spec) {
    if (layer_lookup_.count(name) || projn_lookup_.count(name)) {
        throw std::invalid_argument("duplicate name " + name);
    }
    Index pre_idx = layer_index(pre);
    Index post_idx = layer_index(post);
    projns_.push_back({std::make_unique<Projection>(
                           name, *layers_[pre_idx], *layers_[post_idx], spec,
                           rng_),
                       pre_idx, post_idx});
    projn_lookup_[name] = static_cast<Index>(projn_names_.size());
    projn_names_.push_back(name);
}

void Net::capture_logs(LogFreq freq, long time) {
    if (!logging_) return;
    for (std::size_t i = 0; i < layers_.size(); ++i) {
        LogFrame* frame = nullptr;
        switch (freq) {
            case LogFreq::cycle: frame = &logs_[i].cycle; break;
            case LogFreq::trial: frame = &logs_[i].trial; break;
            case LogFreq::epoch: frame = &logs_[i].epoch; break;
        }
        if (frame->whole_attributes.empty() &&
            frame->part_attributes.empty()) {
            continue;
        }
        frame->capture(time, *layers_[i]);
    }
}

void Net::cycle() {
    for (auto& l : layers_) {
        l->update_aggregates();
        l->compute_inhibition();
    }
    for (auto& l : layers_) l->update_units();
    for (auto& e : projns_) {
        e.projn->flush(*layers_[e.pre], *layers_[e.post]);
    }
    for (auto& l : layers_) l->update_aggregates();
    cycle_count_ += 1;
    capture_logs(LogFreq::cycle, cycle_count_);
}

void Net::minus_phase_cycle(int num_cycles) {
    if (num_cycles < 1) {
        throw std::invalid_argument("num_cycles must be >= 1");
    }
    phase_ = Phase::minus;
    for (int i = 0; i < num_cycles; ++i) cycle();
}

void Net::plus_phase_cycle(int num_cycles) {
    if (num_cycles < 1) {
        throw std::invalid_argument("num_cycles must be >= 1");
    }
    phase_ = Phase::plus;
    for (int i = 0; i < num_cycles; ++i) cycle();
    for (auto& l : layers_) l->end_plus_phase();
    trial_count_ += 1;
    capture_logs(LogFreq::trial, trial_count_);
    phase_ = Phase::none;
}

void Net::learn() {
    for (auto& e : projns_) {
        e.projn->learn(*layers_[e.pre], *layers_[e.post]);
    }
}

void Net::end_epoch() {
    capture_logs(LogFreq::epoch, epoch_count_);
    epoch_count_ += 1;
}

void Net::clamp_layer(const std::string& name, const Array& pattern) {
    layers_[layer_index(name)]->clamp(pattern);
}

void Net::unclamp_layer(const std::string& name) {
    layers_[layer_index(name)]->unclamp();
}

Table Net::observe(const std::string& name, const std::string& attr) const {
    Table t;
    auto lit = layer_lookup_.find(name);
    if (lit != layer_lookup_.end()) {
        const Layer& l = *layers_[lit->second];
        if (is_unit_attribute(attr)) {
            t.columns = {"unit", short_attribute_name(attr)};
            t.integer_column = {true, false};
            Array values = l.unit_attribute(attr);
            for (Index i = 0; i < values.size(); ++i) {
                t.rows.push_back({static_cast<Scalar>(i), values[i]});
            }
            return t;
        }
        if (is_layer_attribute(attr)) {
            t.columns = {short_attribute_name(attr)};
            t.integer_column = {false};
            t.rows.push_back({l.layer_attribute(attr)});
            return t;
        }
        throw std::invalid_argument("unknown layer attribute " + attr);
    }
    auto pit = projn_lookup_.find(name);
    if (pit != projn_lookup_.end()) {
        const Projection& p = *projns_[pit->second].projn;
        if (!is_conn_attribute(attr)) {
            throw std::invalid_argument("unknown connection attribute " +
                                        attr);
        }
        const Matrix& m = p.conn_attribute(attr);
        t.columns = {"pre", "post", short_attribute_name(attr)};
        t.integer_column = {true, true, false};
        for (Index i = 0; i < m.cols(); ++i) {
            for (Index j = 0; j < m.rows(); ++j) {
                t.rows.push_back({static_cast<Scalar>(i),
                                  static_cast<Scalar>(j), m(j, i)});
            }
        }
        return t;
    }
    throw std::invalid_argument("unknown name " + name);
}

const LogFrame& Net::logs(LogFreq freq, const std::string& layer_name) const {
    Index i = layer_index(layer_name);
    switch (freq) {
        case LogFreq::cycle: return logs_[i].cycle;
        case LogFreq::trial: return logs_[i].trial;
        default: return logs_[i].epoch;
    }
}

// ---------------------------------------------------------------------
// Persistence. Container layout:
//   8-byte magic, u32 format version, u64 payload size, payload bytes,
//   u64 FNV-1a hash of the payload.
// All integers little-endian; doubles stored bit-exactly.

namespace {

constexpr char kMagic[8] = {'L', 'E', 'A', 'B', 'R', 'A', '7', 'N'};
constexpr std::uint32_t kFormatVersion = 1;

std::uint64_t fnv1a(const std::string& data) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

struct Writer {
    std::string buf;

    void u8(std::uint8_t v) { buf.push_back(static_cast<char>(v)); }
    void u32(std::uint32_t v) {
        for (int i = 0; i < 4; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void u64(std::uint64_t v) {
        for (int i = 0; i < 8; ++i) u8(static_cast<std::uint8_t>(v >> (8 * i)));
    }
    void i64(std::int64_t v) { u64(static_cast<std::uint64_t>(v)); }
    void f64(Scalar v) {
        std::uint64_t bits;
        std::memcpy(&bits, &v, sizeof bits);
        u64(bits);
    }
    void str(const std::string& s) {
        u64(s.size());
        buf.append(s);
    }
    void arr(const Array& a) {
        i64(a.size());
        for (Index i = 0; i < a.size(); ++i) f64(a[i]);
    }
    void mat(const Matrix& m) {
        i64(m.rows());
        i64(m.cols());
        for (Index j = 0; j < m.rows(); ++j) {
            for (Index i = 0; i < m.cols(); ++i) f64(m(j, i));
        }
    }
};

struct Reader {
    const std::string& buf;
    std::size_t pos = 0;

    void need(std::size_t n) const {
        if (pos + n > buf.size()) throw std::runtime_error("corrupt payload");
    }
    std::uint8_t u8() {
        need(1);
        return static_cast<std::uint8_t>(buf[pos++]);
    }
    std::uint32_t u32() {
        std::uint32_t v = 0;
        for (int i = 0; i < 4; ++i) v |= std::uint32_t(u8()) << (8 * i);
        return v;
    }
    std::uint64_t u64() {
        std::uint64_t v = 0;
        for (int i = 0; i < 8; ++i) v |= std::uint64_t(u8()) << (8 * i);
        return v;
    }
    std::int64_t i64() { return static_cast<std::int64_t>(u64()); }
    Scalar f64() {
        std::uint64_t bits = u64();
        Scalar v;
        std::memcpy(&v, &bits, sizeof v);
        return v;
    }
    std::string str() {
        std::uint64_t n = u64();
        need(n);
        std::string s = buf.substr(pos, n);
        pos += n;
        return s;
    }
    Array arr() {
        std::int64_t n = i64();
        if (n < 0) throw std::runtime_error("corrupt payload");
        Array a(n);
        for (Index i = 0; i < n; ++i) a[i] = f64();
        return a;
    }
    Matrix mat() {
        std::int64_t rows = i64();
        std::int64_t cols = i64();
        if (rows < 0 || cols < 0) throw std::runtime_error("corrupt payload");
        Matrix m(rows, cols);
        for (Index j = 0; j < rows; ++j) {
            for (Index i = 0; i < cols; ++i) m(j, i) = f64();
        }
        return m;
    }
};

void write_strings(Writer& w, const std::vector<std::string>& v) {
    w.u64(v.size());
    for (const auto& s : v) w.str(s);
}

std::vector<std::string> read_strings(Reader& r) {
    std::uint64_t n = r.u64();
    std::vector<std::string> v;
    v.reserve(n);
    for (std::uint64_t i = 0; i < n; ++i) v.push_back(r.str());
    return v;
}

void write_unit_spec(Writer& w, const UnitSpec& s) {
    w.f64(s.integ);
    w.f64(s.net_dt);
    w.f64(s.vm_dt);
    w.f64(s.gc_l);
    w.f64(s.e_rev_e);
    w.f64(s.e_rev_l);
    w.f64(s.e_rev_i);
    w.f64(s.spk_thr);
    w.f64(s.v_m_r);
    w.f64(s.vm_gain);
    w.f64(s.spike_gain);
    w.f64(s.adapt_dt);
    w.f64(s.ss_dt);
    w.f64(s.s_dt);
    w.f64(s.m_dt);
    w.f64(s.l_up_inc);
    w.f64(s.l_dn_dt);
    w.f64(s.gain);
    w.f64(s.noise_sd);
}

UnitSpec read_unit_spec(Reader& r) {
    UnitSpec s;
    s.integ = r.f64();
    s.net_dt = r.f64();
    s.vm_dt = r.f64();
    s.gc_l = r.f64();
    s.e_rev_e = r.f64();
    s.e_rev_l = r.f64();
    s.e_rev_i = r.f64();
    s.spk_thr = r.f64();
    s.v_m_r = r.f64();
    s.vm_gain = r.f64();
    s.spike_gain = r.f64();
    s.adapt_dt = r.f64();
    s.ss_dt = r.f64();
    s.s_dt = r.f64();
    s.m_dt = r.f64();
    s.l_up_inc = r.f64();
    s.l_dn_dt = r.f64();
    s.gain = r.f64();
    s.noise_sd = r.f64();
    return s;
}

void write_layer_spec(Writer& w, const LayerSpec& s) {
    w.f64(s.gi);
    w.f64(s.ff);
    w.f64(s.ff0);
    w.f64(s.fb);
    w.f64(s.fb_dt);
    w.u8(static_cast<std::uint8_t>(s.inhibition_type));
    w.u8(static_cast<std::uint8_t>(s.inhibition_combine));
    w.i64(s.k);
    write_strings(w, s.log_on_cycle);
    write_strings(w, s.log_on_trial);
    write_strings(w, s.log_on_epoch);
    write_unit_spec(w, s.unit_spec);
}

LayerSpec read_layer_spec(Reader& r) {
    LayerSpec s;
    s.gi = r.f64();
    s.ff = r.f64();
    s.ff0 = r.f64();
    s.fb = r.f64();
    s.fb_dt = r.f64();
    s.inhibition_type = static_cast<InhibitionType>(r.u8());
    s.inhibition_combine = static_cast<InhibitionCombine>(r.u8());
    s.k = static_cast<int>(r.i64());
    s.log_on_cycle = read_strings(r);
    s.log_on_trial = read_strings(r);
    s.log_on_epoch = read_strings(r);
    s.unit_spec = read_unit_spec(r);
    return s;
}

void write_dist(Writer& w, const Dist& d) {
    if (const auto* u = std::get_if<Uniform>(&d)) {
        w.u8(0);
        w.f64(u->lo);
        w.f64(u->hi);
    } else if (const auto* c = std::get_if<Constant>(&d)) {
        w.u8(1);
        w.f64(c->c);
    } else {
        const auto& g = std::get<Gaussian>(d);
        w.u8(2);
        w.f64(g.mean);
        w.f64(g.sd);
    }
}

Dist read_dist(Reader& r) {
    switch (r.u8()) {
        case 0: {
            Uniform u;
            u.lo = r.f64();
            u.hi = r.f64();
            return u;
        }
        case 1: {
            Constant c;
            c.c = r.f64();
            return c;
        }
        case 2: {
            Gaussian g;
            g.mean = r.f64();
            g.sd = r.f64();
            return g;
        }
        default: throw std::runtime_error("corrupt payload");
    }
}

void write_projn_spec(Writer& w, const ProjnSpec& s) {
    w.f64(s.lrate);
    write_dist(w, s.dist);
    w.f64(s.thr_l_mix);
    w.f64(s.s_mix);
    w.f64(s.sig_offset);
    w.f64(s.sig_gain);
    w.f64(s.wt_scale_rel);
    w.f64(s.d_rev);
    w.u8(s.cos_diff_lrate ? 1 : 0);
    w.u8(s.cos_diff_thr_l_mix ? 1 : 0);
}

ProjnSpec read_projn_spec(Reader& r) {
    ProjnSpec s;
    s.lrate = r.f64();
    s.dist = read_dist(r);
    s.thr_l_mix = r.f64();
    s.s_mix = r.f64();
    s.sig_offset = r.f64();
    s.sig_gain = r.f64();
    s.wt_scale_rel = r.f64();
    s.d_rev = r.f64();
    s.cos_diff_lrate = r.u8() != 0;
    s.cos_diff_thr_l_mix = r.u8() != 0;
    return s;
}

}  // namespace

void Net::save(std::ostream& out) const {
    Writer w;
    w.str(rng_.state());
    w.i64(cycle_count_);
    w.i64(trial_count_);
    w.i64(epoch_count_);
    w.u8(static_cast<std::uint8_t>(phase_));
    w.u8(logging_ ? 1 : 0);

    w.u32(static_cast<std::uint32_t>(layers_.size()));
    for (const auto& lp : layers_) {
        const Layer& l = *lp;
        w.str(l.name());
        write_layer_spec(w, l.spec());
        w.i64(l.size());
        const UnitGroup& u = l.units();
        w.arr(u.net);
        w.arr(u.input_acc);
        w.arr(u.i_net);
        w.arr(u.v_m);
        w.arr(u.v_m_eq);
        w.arr(u.act);
        w.arr(u.spike);
        w.arr(u.adapt);
        w.arr(u.avg_ss);
        w.arr(u.avg_s);
        w.arr(u.avg_m);
        w.arr(u.avg_l);
        w.f64(l.fbi_);
        w.f64(l.gc_i_);
        w.f64(l.avg_net_);
        w.f64(l.avg_act_);
        w.f64(l.acts_p_avg_);
        w.u8(l.clamped_ ? 1 : 0);
        if (l.clamped_) w.arr(l.clamp_pattern_);
    }

    w.u32(static_cast<std::uint32_t>(projns_.size()));
    for (const auto& e : projns_) {
        const Projection& p = *e.projn;
        w.str(p.name());
        w.str(p.pre_name());
        w.str(p.post_name());
        write_projn_spec(w, p.spec());
        w.mat(p.fwt());
        w.mat(p.wt());
        w.mat(p.dwt());
    }

    out.write(kMagic, sizeof kMagic);
    Writer header;
    header.u32(kFormatVersion);
    header.u64(w.buf.size());
    out.write(header.buf.data(),
              static_cast<std::streamsize>(header.buf.size()));
    out.write(w.buf.data(), static_cast<std::streamsize>(w.buf.size()));
    Writer tail;
    tail.u64(fnv1a(w.buf));
    out.write(tail.buf.data(), static_cast<std::streamsize>(tail.buf.size()));
    if (!out) throw std::runtime_error("write failed");
}

void Net::save(const std::string& path) const {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    save(out);
}

Net Net::load(std::istream& in) {
    char magic[8];
    in.read(magic, sizeof magic);
    if (!in || std::memcmp(magic, kMagic, sizeof magic) != 0) {
        throw std::runtime_error("bad magic");
    }
    std::string head(12, '\0');
    in.read(head.data(), 12);
    if (!in) throw std::runtime_error("corrupt payload");
    Reader hr{head};
    std::uint32_t version = hr.u32();
    if (version != kFormatVersion) {
        throw std::runtime_error("unsupported format version");
    }
    std::uint64_t payload_size = hr.u64();
    std::string payload(payload_size, '\0');
    in.read(payload.data(), static_cast<std::streamsize>(payload_size));
    if (!in || static_cast<std::uint64_t>(in.gcount()) != payload_size) {
        throw std::runtime_error("corrupt payload");
    }
    std::string tail(8, '\0');
    in.read(tail.data(), 8);
    if (!in) throw std::runtime_error("corrupt payload");
    Reader tr{tail};
    if (tr.u64() != fnv1a(payload)) {
        throw std::runtime_error("corrupt payload");
    }

    Reader r{payload};
    Net net;
    std::string rng_state = r.str();
    net.cycle_count_ = r.i64();
    net.trial_count_ = r.i64();
    net.epoch_count_ = r.i64();
    net.phase_ = static_cast<Phase>(r.u8());
    net.logging_ = r.u8() != 0;

    std::uint32_t n_layers = r.u32();
    for (std::uint32_t i = 0; i < n_layers; ++i) {
        std::string name = r.str();
        LayerSpec spec = read_layer_spec(r);
        Index size = r.i64();
        net.new_layer(name, size, spec);
        Layer& l = *net.layers_.back();
        UnitGroup& u = l.units();
        auto restore = [&](Array& dst) {
            Array a = r.arr();
            if (a.size() != size) throw std::runtime_error("corrupt payload");
            dst = a;
        };
        restore(u.net);
        restore(u.input_acc);
        restore(u.i_net);
        restore(u.v_m);
        restore(u.v_m_eq);
        restore(u.act);
        restore(u.spike);
        restore(u.adapt);
        restore(u.avg_ss);
        restore(u.avg_s);
        restore(u.avg_m);
        restore(u.avg_l);
        l.fbi_ = r.f64();
        l.gc_i_ = r.f64();
        l.avg_net_ = r.f64();
        l.avg_act_ = r.f64();
        l.acts_p_avg_ = r.f64();
        l.clamped_ = r.u8() != 0;
        if (l.clamped_) {
            l.clamp_pattern_ = r.arr();
            if (l.clamp_pattern_.size() != size) {
                throw std::runtime_error("corrupt payload");
            }
        }
    }

    std::uint32_t n_projns = r.u32();
    for (std::uint32_t i = 0; i < n_projns; ++i) {
        std::string name = r.str();
        std::string pre = r.str();
        std::string post = r.str();
        ProjnSpec spec = read_projn_spec(r);
        net.new_projn(name, pre, post, spec);
        Projection& p = *net.projns_.back().projn;
        Matrix fwt = r.mat();
        Matrix wt = r.mat();
        Matrix dwt = r.mat();
        if (fwt.rows() != p.post_size() || fwt.cols() != p.pre_size()) {
            throw std::runtime_error("corrupt payload");
        }
        p.mutable_fwt() = fwt;
        p.mutable_wt() = wt;
        p.mutable_dwt() = dwt;
    }
    if (r.pos != payload.size()) throw std::runtime_error("corrupt payload");

    // Reconstruction sampled fresh weights; restoring the stream state
    // last makes the sequence continue exactly where save left off.
    net.rng_.set_state(rng_state);
    return net;
}

Net Net::load(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path + " for reading");
    return load(in);
}

}  // namespace leabra7

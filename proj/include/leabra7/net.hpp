#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "leabra7/layer.hpp"
#include "leabra7/log.hpp"
#include "leabra7/projection.hpp"
#include "leabra7/rng.hpp"
#include "leabra7/specs.hpp"
#include "leabra7/types.hpp"

namespace leabra7 {

enum class Phase : std::uint8_t { none, minus, plus };
enum class LogFreq : std::uint8_t { cycle, trial, epoch };

LogFreq log_freq_from_string(const std::string& s);

// Container and scheduler. Layers and projections are stored and stepped
// in insertion order; one cycle() is the only place unit state advances.
class Net {
  public:
    explicit Net(std::uint64_t seed = 0);

    Net(const Net&) = delete;
    Net& operator=(const Net&) = delete;
    Net(Net&&) = default;
    Net& operator=(Net&&) = default;

    void new_layer(const std::string& name, Index size,
                   const LayerSpec& spec = LayerSpec());
    void new_projn(const std::string& name, const std::string& pre,
                   const std::string& post,
                   const ProjnSpec& spec = ProjnSpec());

    void cycle();
    void minus_phase_cycle(int num_cycles);
    void plus_phase_cycle(int num_cycles);
    void learn();
    void end_epoch();

    void clamp_layer(const std::string& name, const Array& pattern);
    void unclamp_layer(const std::string& name);

    Table observe(const std::string& name, const std::string& attr) const;
    const LogFrame& logs(LogFreq freq, const std::string& layer_name) const;
    void pause_logging() { logging_ = false; }
    void resume_logging() { logging_ = true; }
    bool logging_enabled() const { return logging_; }

    long cycle_count() const { return cycle_count_; }
    long trial_count() const { return trial_count_; }
    long epoch_count() const { return epoch_count_; }
    Phase phase() const { return phase_; }

    Layer& layer(const std::string& name);
    const Layer& layer(const std::string& name) const;
    Projection& projn(const std::string& name);
    const Projection& projn(const std::string& name) const;
    const std::vector<std::string>& layer_names() const {
        return layer_names_;
    }
    const std::vector<std::string>& projn_names() const {
        return projn_names_;
    }

    Rng& rng() { return rng_; }

    void save(std::ostream& out) const;
    void save(const std::string& path) const;
    static Net load(std::istream& in);
    static Net load(const std::string& path);

  private:
    struct ProjnEntry {
        std::unique_ptr<Projection> projn;
        Index pre;   // layer indices
        Index post;
    };
    struct LayerLogs {
        LogFrame cycle;
        LogFrame trial;
        LogFrame epoch;
    };

    Index layer_index(const std::string& name) const;
    void capture_logs(LogFreq freq, long time);
    LogFrame make_frame(const std::vector<std::string>& attrs) const;

    Rng rng_;
    std::vector<std::unique_ptr<Layer>> layers_;
    std::vector<std::string> layer_names_;
    std::map<std::string, Index> layer_lookup_;
    std::vector<ProjnEntry> projns_;
    std::vector<std::string> projn_names_;
    std::map<std::string, Index> projn_lookup_;
    std::vector<LayerLogs> logs_;
    bool logging_ = true;
    long cycle_count_ = 0;
    long trial_count_ = 0;
    long epoch_count_ = 0;
    Phase phase_ = Phase::none;
};

}  // namespace leabra7

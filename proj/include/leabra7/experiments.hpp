#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "leabra7/dataset.hpp"
#include "leabra7/net.hpp"
#include "leabra7/specs.hpp"
#include "leabra7/types.hpp"

namespace leabra7 {

// Baseline specs for each reference experiment. A config file edits these
// before the builders run; experiment-structural settings (feedback
// wt_scale_rel and init distribution) are applied on top.
struct SpecBundle {
    UnitSpec unit;
    LayerSpec layer;
    ProjnSpec projn;
};

SpecBundle two_neurons_specs();
SpecBundle pat_assoc_specs();
SpecBundle err_hidden_specs();
SpecBundle iris_specs();

Net build_two_neurons(std::uint64_t seed, const SpecBundle& specs);
Net build_pat_assoc(std::uint64_t seed, const SpecBundle& specs);
// hidden == 0 builds the direct input->output control network.
Net build_err_hidden(std::uint64_t seed, int hidden, const SpecBundle& specs);
Net build_iris(std::uint64_t seed, Index input_size, int hidden,
               const SpecBundle& specs);

// Clamp input, settle through the minus phase, clamp the target, run the
// plus phase, unclamp both, learn.
void run_trial(Net& net, const Array& x, const Array& y, int minus_cycles,
               int plus_cycles);

// run_trial per sample in the listed order, then the epoch tick.
void run_epoch(Net& net, const ArrayXX& X, const ArrayXX& Y,
               const std::vector<Index>& order, int minus_cycles,
               int plus_cycles);

// Mean squared error with differences below 0.5 zeroed first.
Scalar mse_thresh(const ArrayXX& expected, const ArrayXX& actual);
Scalar mse(const ArrayXX& expected, const ArrayXX& actual);
// Fraction of rows matching exactly.
Scalar exact_match_accuracy(const ArrayXX& expected, const ArrayXX& actual);

// Per row: clamp input, settle 50 free cycles, unclamp, read output acts.
// binarize sets the argmax entry to 1 and the rest to 0 (first index wins
// ties). Weights are untouched; only unit state advances.
ArrayXX predict(Net& net, const ArrayXX& X, const std::vector<Index>& rows,
                bool binarize);

struct CheckpointRow {
    long epoch;
    Scalar train_loss;
    Scalar train_accuracy = 0.0;
    Scalar test_loss = 0.0;
    Scalar test_accuracy = 0.0;
};

struct TrainReport {
    std::vector<CheckpointRow> rows;
    bool has_accuracy = false;  // accuracy/test columns populated
    long epochs_run = 0;
    long converged_epoch = -1;  // epoch of the third straight zero loss
};

struct TrainOptions {
    long num_epochs = 3000;
    int minus_cycles = 100;
    int plus_cycles = 20;
    // Classification mode: checkpoint every 5 epochs with plain MSE and
    // exact-match accuracy of binarized predictions on the train and test
    // slices. Off: checkpoint every epoch with thresholded MSE of raw
    // outputs on the train slice, stopping after 3 straight zeros.
    bool classification = false;
};

// Logging stays paused while epochs run and is resumed just before the
// final one, so epoch logs hold the settled network only.
TrainReport train(Net& net, const Dataset& data, const TrainOptions& opt);

void write_metrics_csv(const TrainReport& report, const std::string& path);
// <task>_<layer>_<freq>_{parts,whole}.csv for every non-empty frame.
void emit_layer_logs(const Net& net, const std::string& task,
                     const std::string& out_dir);
void emit_loss_plot(const TrainReport& report, const std::string& task,
                    const std::string& out_dir);
// The seven-series cycle-log dynamics trace of the output layer.
void emit_two_neurons_plot(const Net& net, const std::string& out_dir);

}  // namespace leabra7

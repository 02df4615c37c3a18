#include "leabra7/experiments.hpp"

#include <fstream>
#include <stdexcept>

#include "leabra7/log.hpp"
#include "leabra7/svg_plot.hpp"

namespace leabra7 {

SpecBundle two_neurons_specs() {
    SpecBundle b;
    b.layer.log_on_cycle = {"unit_v_m",  "unit_act",   "unit_i_net",
                            "unit_net",  "unit_gc_i",  "unit_adapt",
                            "unit_spike"};
    b.projn.dist = Constant{0.5};
    return b;
}

SpecBundle pat_assoc_specs() {
    SpecBundle b;
    b.unit.adapt_dt = 0;
    b.unit.vm_gain = 0;
    b.unit.spike_gain = 0;
    b.unit.ss_dt = 1;
    b.unit.s_dt = 0.2;
    b.unit.m_dt = 0.15;
    b.unit.l_dn_dt = 0.4;
    b.unit.l_up_inc = 0.15;
    b.unit.vm_dt = 0.3;
    b.unit.net_dt = 0.7;
    b.layer.gi = 1.5;
    b.layer.ff = 1;
    b.layer.fb = 0.5;
    b.layer.fb_dt = 0.7;
    b.layer.log_on_epoch = {"unit_act"};
    b.projn.lrate = 0.02;
    b.projn.dist = Uniform{0.25, 0.75};
    b.projn.thr_l_mix = 0.01;
    return b;
}

SpecBundle err_hidden_specs() {
    SpecBundle b;
    b.unit.adapt_dt = 0;
    b.unit.vm_gain = 0;
    b.unit.spike_gain = 0;
    b.unit.ss_dt = 1;
    b.unit.s_dt = 0.2;
    b.unit.m_dt = 0.1;
    b.unit.l_dn_dt = 0.4;
    b.unit.l_up_inc = 0.15;
    b.unit.vm_dt = 1 / 3.3;
    b.unit.net_dt = 0.7;
    b.layer.gi = 1.5;
    b.layer.ff = 1;
    b.layer.fb = 1;
    b.projn.lrate = 0.04;
    b.projn.dist = Uniform{0.25, 0.75};
    b.projn.thr_l_mix = 0;
    b.projn.cos_diff_thr_l_mix = true;
    return b;
}

SpecBundle iris_specs() {
    SpecBundle b;
    b.unit.spike_gain = 0;
    b.unit.vm_gain = 0;
    b.unit.adapt_dt = 0;
    b.layer.gi = 1.5;
    b.layer.ff = 1;
    b.layer.fb = 1;
    b.projn.lrate = 0.02;
    b.projn.dist = Uniform{0.25, 0.75};
    return b;
}

namespace {

LayerSpec with_unit(const SpecBundle& specs) {
    LayerSpec layer = specs.layer;
    layer.unit_spec = specs.unit;
    return layer;
}

}  // namespace

Net build_two_neurons(std::uint64_t seed, const SpecBundle& specs) {
    Net net(seed);
    LayerSpec layer = with_unit(specs);
    net.new_layer("input", 1, layer);
    net.new_layer("output", 1, layer);
    net.new_projn("proj1", "input", "output", specs.projn);
    return net;
}

Net build_pat_assoc(std::uint64_t seed, const SpecBundle& specs) {
    Net net(seed);
    LayerSpec layer = with_unit(specs);
    net.new_layer("input", 4, layer);
    net.new_layer("output", 2, layer);
    net.new_projn("input_to_output", "input", "output", specs.projn);
    return net;
}

Net build_err_hidden(std::uint64_t seed, int hidden,
                     const SpecBundle& specs) {
    Net net(seed);
    LayerSpec layer = with_unit(specs);
    net.new_layer("input", 4, layer);
    if (hidden > 0) net.new_layer("hidden", hidden, layer);
    net.new_layer("output", 2, layer);
    if (hidden > 0) {
        ProjnSpec down = specs.projn;
        down.wt_scale_rel = 0.3;
        net.new_projn("input_to_hidden", "input", "hidden", specs.projn);
        net.new_projn("hidden_to_output", "hidden", "output", specs.projn);
        net.new_projn("output_to_hidden", "output", "hidden", down);
    } else {
        net.new_projn("input_to_output", "input", "output", specs.projn);
    }
    return net;
}

Net build_iris(std::uint64_t seed, Index input_size, int hidden,
               const SpecBundle& specs) {
    if (hidden < 1) throw std::invalid_argument("hidden must be >= 1");
    Net net(seed);
    LayerSpec layer = with_unit(specs);
    net.new_layer("input", input_size, layer);
    net.new_layer("hidden", hidden, layer);
    net.new_layer("output", 3, layer);
    ProjnSpec down = specs.projn;
    down.dist = Uniform{0.25, 0.5};
    down.wt_scale_rel = 0.3;
    net.new_projn("input_to_hidden", "input", "hidden", specs.projn);
    net.new_projn("hidden_to_output", "hidden", "output", specs.projn);
    net.new_projn("output_to_hidden", "output", "hidden", down);
    return net;
}

void run_trial(Net& net, const Array& x, const Array& y, int minus_cycles,
               int plus_cycles) {
    net.clamp_layer("input", x);
    net.minus_phase_cycle(minus_cycles);
    net.clamp_layer("output", y);
    net.plus_phase_cycle(plus_cycles);
    net.unclamp_layer("input");
    net.unclamp_layer("output");
    net.learn();
}

void run_epoch(Net& net, const ArrayXX& X, const ArrayXX& Y,
               const std::vector<Index>& order, int minus_cycles,
               int plus_cycles) {
    for (Index r : order) {
        run_trial(net, X.row(r).transpose(), Y.row(r).transpose(),
                  minus_cycles, plus_cycles);
    }
    net.end_epoch();
}

Scalar mse_thresh(const ArrayXX& expected, const ArrayXX& actual) {
    if (expected.rows() != actual.rows() ||
        expected.cols() != actual.cols()) {
        throw std::invalid_argument("mse_thresh shape mismatch");
    }
    if (expected.size() == 0) return 0.0;
    ArrayXX d = (expected - actual).abs();
    d = (d < 0.5).select(ArrayXX::Zero(d.rows(), d.cols()), d);
    return (d * d).mean();
}

Scalar mse(const ArrayXX& expected, const ArrayXX& actual) {
    if (expected.rows() != actual.rows() ||
        expected.cols() != actual.cols()) {
        throw std::invalid_argument("mse shape mismatch");
    }
    if (expected.size() == 0) return 0.0;
    return (expected - actual).square().mean();
}

Scalar exact_match_accuracy(const ArrayXX& expected, const ArrayXX& actual) {
    if (expected.rows() != actual.rows() ||
        expected.cols() != actual.cols()) {
        throw std::invalid_argument("accuracy shape mismatch");
    }
    Index hits = 0;
    for (Index r = 0; r < expected.rows(); ++r) {
        if ((expected.row(r) == actual.row(r)).all()) ++hits;
    }
    return expected.rows() == 0
               ? 0.0
               : static_cast<Scalar>(hits) /
                     static_cast<Scalar>(expected.rows());
}

ArrayXX predict(Net& net, const ArrayXX& X, const std::vector<Index>& rows,
                bool binarize) {
    const Index out_size = net.layer("output").size();
    ArrayXX preds(static_cast<Index>(rows.size()), out_size);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        net.clamp_layer("input", X.row(rows[i]).transpose());
        for (int c = 0; c < 50; ++c) net.cycle();
        net.unclamp_layer("input");
        Array act = net.layer("output").unit_attribute("unit_act");
        if (binarize) {
            Index max_idx = 0;
            for (Index j = 1; j < act.size(); ++j) {
                if (act[j] > act[max_idx]) max_idx = j;
            }
            act.setZero();
            act[max_idx] = 1.0;
        }
        preds.row(static_cast<Index>(i)) = act.transpose();
    }
    return preds;
}

namespace {

ArrayXX take_rows(const ArrayXX& m, const std::vector<Index>& rows) {
    ArrayXX out(static_cast<Index>(rows.size()), m.cols());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        out.row(static_cast<Index>(i)) = m.row(rows[i]);
    }
    return out;
}

}  // namespace

TrainReport train(Net& net, const Dataset& data, const TrainOptions& opt) {
    TrainReport report;
    report.has_accuracy = opt.classification;
    const ArrayXX y_train = take_rows(data.Y, data.train_idx);
    const ArrayXX y_test = take_rows(data.Y, data.test_idx);

    net.pause_logging();
    int perfect_epochs = 0;
    for (long i = 0; i < opt.num_epochs; ++i) {
        const bool maybe_final =
            perfect_epochs == 2 || i == opt.num_epochs - 1;
        if (maybe_final) net.resume_logging();
        run_epoch(net, data.X, data.Y, data.train_idx, opt.minus_cycles,
                  opt.plus_cycles);
        report.epochs_run = i + 1;

        if (opt.classification) {
            if ((i + 1) % 5 == 0) {
                ArrayXX pred_train =
                    predict(net, data.X, data.train_idx, true);
                CheckpointRow row;
                row.epoch = i;
                row.train_loss = mse(y_train, pred_train);
                row.train_accuracy =
                    exact_match_accuracy(y_train, pred_train);
                ArrayXX pred_test = predict(net, data.X, data.test_idx, true);
                row.test_loss = mse(y_test, pred_test);
                row.test_accuracy = exact_match_accuracy(y_test, pred_test);
                report.rows.push_back(row);
            }
            if (maybe_final && i != opt.num_epochs - 1) net.pause_logging();
            continue;
        }

        ArrayXX pred = predict(net, data.X, data.train_idx, false);
        CheckpointRow row;
        row.epoch = i;
        row.train_loss = mse_thresh(y_train, pred);
        report.rows.push_back(row);
        if (row.train_loss == 0.0) {
            ++perfect_epochs;
        } else {
            perfect_epochs = 0;
        }
        if (perfect_epochs == 3) {
            report.converged_epoch = i;
            break;
        }
        if (maybe_final && perfect_epochs != 2 && i != opt.num_epochs - 1) {
            net.pause_logging();
        }
    }
    net.resume_logging();
    return report;
}

void write_metrics_csv(const TrainReport& report, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    if (report.has_accuracy) {
        out << "epoch,train_loss,train_accuracy,test_loss,test_accuracy\n";
    } else {
        out << "epoch,train_loss\n";
    }
    for (const auto& row : report.rows) {
        out << row.epoch << ',' << format_number(row.train_loss);
        if (report.has_accuracy) {
            out << ',' << format_number(row.train_accuracy) << ','
                << format_number(row.test_loss) << ','
                << format_number(row.test_accuracy);
        }
        out << '\n';
    }
}

void emit_layer_logs(const Net& net, const std::string& task,
                     const std::string& out_dir) {
    const struct {
        LogFreq freq;
        const char* name;
    } freqs[] = {{LogFreq::cycle, "cycle"},
                 {LogFreq::trial, "trial"},
                 {LogFreq::epoch, "epoch"}};
    for (const auto& layer_name : net.layer_names()) {
        for (const auto& f : freqs) {
            const LogFrame& frame = net.logs(f.freq, layer_name);
            const std::string base =
                out_dir + "/" + task + "_" + layer_name + "_" + f.name;
            if (!frame.parts.empty()) {
                write_parts_csv(frame, base + "_parts.csv");
            }
            if (!frame.whole.empty()) {
                write_whole_csv(frame, base + "_whole.csv");
            }
        }
    }
}

void emit_loss_plot(const TrainReport& report, const std::string& task,
                    const std::string& out_dir) {
    std::vector<Series> series;
    Series loss;
    loss.label = "train_loss";
    for (const auto& row : report.rows) {
        loss.x.push_back(static_cast<Scalar>(row.epoch));
        loss.y.push_back(row.train_loss);
    }
    series.push_back(std::move(loss));
    if (report.has_accuracy) {
        Series test_loss, train_acc, test_acc;
        test_loss.label = "test_loss";
        train_acc.label = "train_accuracy";
        test_acc.label = "test_accuracy";
        for (const auto& row : report.rows) {
            const Scalar e = static_cast<Scalar>(row.epoch);
            test_loss.x.push_back(e);
            test_loss.y.push_back(row.test_loss);
            train_acc.x.push_back(e);
            train_acc.y.push_back(row.train_accuracy);
            test_acc.x.push_back(e);
            test_acc.y.push_back(row.test_accuracy);
        }
        series.push_back(std::move(test_loss));
        series.push_back(std::move(train_acc));
        series.push_back(std::move(test_acc));
    }
    write_svg_plot(out_dir + "/" + task + "_loss.svg", task + " training",
                   "epoch", report.has_accuracy ? "value" : "loss", series);
    write_dat(out_dir + "/" + task + "_loss.dat", series);
}

void emit_two_neurons_plot(const Net& net, const std::string& out_dir) {
    const LogFrame& frame = net.logs(LogFreq::cycle, "output");
    std::vector<Series> series;
    for (const auto& attr : frame.part_attributes) {
        Series s;
        s.label = short_attribute_name(attr);
        series.push_back(std::move(s));
    }
    const std::size_t stride = frame.part_attributes.size();
    for (std::size_t i = 0; i + stride <= frame.parts.size(); i += stride) {
        for (std::size_t a = 0; a < stride; ++a) {
            series[a].x.push_back(
                static_cast<Scalar>(frame.parts[i + a].time));
            series[a].y.push_back(frame.parts[i + a].value);
        }
    }
    write_svg_plot(out_dir + "/two_neurons_dynamics.svg",
                   "two neurons dynamics", "cycle", "value", series);
    write_dat(out_dir + "/two_neurons_dynamics.dat", series);
}

}  // namespace leabra7

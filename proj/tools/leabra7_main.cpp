#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "leabra7/config.hpp"
#include "leabra7/dataset.hpp"
#include "leabra7/experiments.hpp"
#include "leabra7/log.hpp"
#include "leabra7/net.hpp"

#ifndef LEABRA7_IRIS_CSV
#define LEABRA7_IRIS_CSV "data/iris.csv"
#endif

namespace {

using namespace leabra7;

SpecBundle apply_config(const SpecBundle& base, const std::string& path) {
    if (path.empty()) return base;
    Config cfg = Config::parse_file(path, base.unit, base.layer, base.projn);
    return SpecBundle{cfg.unit, cfg.layer, cfg.projn};
}

void ensure_out_dir(const std::string& out) {
    std::filesystem::create_directories(out);
}

void print_report(const std::string& task, const TrainReport& report) {
    if (report.converged_epoch >= 0) {
        std::cout << task << ": converged at epoch "
                  << report.converged_epoch << " (" << report.epochs_run
                  << " epochs run)\n";
    } else if (!report.has_accuracy) {
        std::cout << task << ": did not converge in " << report.epochs_run
                  << " epochs (final loss "
                  << (report.rows.empty()
                          ? std::string("n/a")
                          : format_number(report.rows.back().train_loss))
                  << ")\n";
    }
    if (report.has_accuracy && !report.rows.empty()) {
        const auto& last = report.rows.back();
        std::cout << task << ": epoch " << last.epoch << " train_accuracy "
                  << format_number(last.train_accuracy) << " test_accuracy "
                  << format_number(last.test_accuracy) << "\n";
    }
}

int run_two_neurons(const std::string& out, std::uint64_t seed,
                    const std::string& config) {
    ensure_out_dir(out);
    SpecBundle specs = apply_config(two_neurons_specs(), config);
    Net net = build_two_neurons(seed, specs);
    net.clamp_layer("input", Array::Constant(1, 1.0));
    for (int i = 0; i < 200; ++i) net.cycle();
    emit_layer_logs(net, "two_neurons", out);
    emit_two_neurons_plot(net, out);
    net.save(out + "/two_neurons_network.l7n");

    const LogFrame& frame = net.logs(LogFreq::cycle, "output");
    int spikes = 0;
    for (const auto& row : frame.parts) {
        if (row.attribute == "unit_spike" && row.value > 0) ++spikes;
    }
    std::cout << "two_neurons: 200 cycles, " << spikes
              << " output spikes, final act "
              << format_number(
                     net.layer("output").unit_attribute("unit_act")[0])
              << "\n";
    return 0;
}

int run_pattern_task(const std::string& task, const std::string& out,
                     std::uint64_t seed, long epochs, int hidden,
                     const std::string& config) {
    ensure_out_dir(out);
    const bool err = task == "err_hidden";
    SpecBundle specs =
        apply_config(err ? err_hidden_specs() : pat_assoc_specs(), config);
    Dataset data = builtin_patterns(err ? PatternTask::err_hidden
                                        : PatternTask::pat_assoc);
    Net net = err ? build_err_hidden(seed, hidden, specs)
                  : build_pat_assoc(seed, specs);
    TrainOptions opt;
    opt.num_epochs = epochs;
    opt.minus_cycles = err ? 50 : 100;
    opt.plus_cycles = 20;
    TrainReport report = train(net, data, opt);
    write_metrics_csv(report, out + "/metrics.csv");
    emit_layer_logs(net, task, out);
    emit_loss_plot(report, task, out);
    net.save(out + "/" + task + "_network.l7n");
    print_report(task, report);
    return 0;
}

int run_iris(const std::string& out, std::uint64_t seed, long epochs,
             int bins, int hidden, double test_frac, const std::string& data,
             const std::string& config) {
    ensure_out_dir(out);
    SpecBundle specs = apply_config(iris_specs(), config);
    IrisTable raw = load_iris_csv(data);
    Dataset ds = preprocess_iris(raw, bins, seed, test_frac);
    std::cout << "iris: input width " << ds.X.cols() << ", "
              << ds.train_idx.size() << " train / " << ds.test_idx.size()
              << " test rows\n";
    Net net = build_iris(seed, ds.X.cols(), hidden, specs);
    TrainOptions opt;
    opt.num_epochs = epochs;
    opt.minus_cycles = 50;
    opt.plus_cycles = 25;
    opt.classification = true;
    TrainReport report = train(net, ds, opt);
    write_metrics_csv(report, out + "/metrics.csv");
    emit_layer_logs(net, "iris", out);
    emit_loss_plot(report, "iris", out);
    net.save(out + "/iris_network.l7n");
    print_report("iris", report);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"leabra7: rate-coded LEABRA network simulator"};
    app.require_subcommand(1);

    std::string out = ".";
    std::uint64_t seed = 0;
    std::string config;
    long epochs = 3000;
    int hidden = 4;
    int bins = 10;
    double test_frac = 0.2;
    std::string data = LEABRA7_IRIS_CSV;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--out", out, "Output directory");
        cmd->add_option("--seed", seed, "Random seed");
        cmd->add_option("--config", config, "Spec override file (INI)");
    };

    auto* two = app.add_subcommand(
        "two-neurons", "Trace one input unit driving one output unit");
    add_common(two);

    auto* pat = app.add_subcommand(
        "pat-assoc", "Pattern association on the builtin 4-pattern set");
    add_common(pat);
    pat->add_option("--epochs", epochs, "Maximum training epochs");

    auto* errh = app.add_subcommand(
        "err-hidden", "Error-driven learning with a hidden layer");
    add_common(errh);
    errh->add_option("--epochs", epochs, "Maximum training epochs");
    errh->add_option("--hidden", hidden,
                     "Hidden layer size (0 removes the hidden layer)");

    auto* iris = app.add_subcommand("iris", "IRIS classification");
    add_common(iris);
    iris->add_option("--epochs", epochs, "Training epochs");
    iris->add_option("--bins", bins, "Quantile bins per feature");
    iris->add_option("--hidden", hidden, "Hidden layer size");
    iris->add_option("--test-frac", test_frac, "Held-out test fraction");
    iris->add_option("--data", data, "IRIS CSV path");

    try {
        app.parse(argc, argv);
        if (two->parsed()) return run_two_neurons(out, seed, config);
        if (pat->parsed()) {
            return run_pattern_task("pat_assoc", out, seed, epochs, 0,
                                    config);
        }
        if (errh->parsed()) {
            return run_pattern_task("err_hidden", out, seed, epochs, hidden,
                                    config);
        }
        if (iris->parsed()) {
            if (!iris->count("--epochs")) epochs = 500;
            if (!iris->count("--hidden")) hidden = 23;
            return run_iris(out, seed, epochs, bins, hidden, test_frac, data,
                            config);
        }
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}

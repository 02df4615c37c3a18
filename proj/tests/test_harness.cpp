#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "doctest.h"
#include "leabra7/experiments.hpp"

using namespace leabra7;

namespace {

ArrayXX rows2x2(Scalar a, Scalar b, Scalar c, Scalar d) {
    ArrayXX m(2, 2);
    m << a, b, c, d;
    return m;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

std::string fresh_dir(const std::string& leaf) {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / leaf;
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir.string();
}

}  // namespace

TEST_CASE("thresholded mse zeroes near misses") {
    ArrayXX expected(1, 2);
    expected << 1, 0;
    ArrayXX close(1, 2);
    close << 0.6, 0.4;
    CHECK(mse_thresh(expected, close) == 0.0);
    ArrayXX wrong(1, 2);
    wrong << 0, 1;
    CHECK(mse_thresh(expected, wrong) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(mse_thresh(expected, expected) == 0.0);
    // Mixed: one miss of 0.7, three clean, over 4 entries.
    ArrayXX e2 = rows2x2(1, 0, 0, 1);
    ArrayXX a2 = rows2x2(0.3, 0, 0, 1);
    CHECK(mse_thresh(e2, a2) == doctest::Approx(0.49 / 4.0).epsilon(1e-12));
    CHECK(mse_thresh(e2, a2) <= mse(e2, a2));
    CHECK_THROWS_AS(mse_thresh(expected, e2), std::invalid_argument);
}

TEST_CASE("plain mse and exact match accuracy") {
    ArrayXX e = rows2x2(1, 0, 0, 1);
    ArrayXX a = rows2x2(1, 0, 1, 0);
    CHECK(mse(e, a) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(exact_match_accuracy(e, a) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(exact_match_accuracy(e, e) == 1.0);
    CHECK_THROWS_AS(mse(e, ArrayXX(1, 2)), std::invalid_argument);
    CHECK_THROWS_AS(exact_match_accuracy(e, ArrayXX(1, 2)),
                    std::invalid_argument);
    // Empty slices are defined as zero loss, not NaN.
    ArrayXX empty(0, 2);
    CHECK(mse(empty, empty) == 0.0);
    CHECK(mse_thresh(empty, empty) == 0.0);
    CHECK(exact_match_accuracy(empty, empty) == 0.0);
}

TEST_CASE("predict binarizes by argmax with first-index ties") {
    Net net;
    net.new_layer("input", 2);
    net.new_layer("output", 3);
    ArrayXX X(1, 2);
    X << 1, 0;

    Array out(3);
    out << 0.2, 0.9, 0.1;
    net.clamp_layer("output", out);
    ArrayXX pred = predict(net, X, {0}, true);
    CHECK(pred(0, 0) == 0.0);
    CHECK(pred(0, 1) == 1.0);
    CHECK(pred(0, 2) == 0.0);

    out << 0.5, 0.5, 0.0;
    net.clamp_layer("output", out);
    pred = predict(net, X, {0}, true);
    CHECK(pred(0, 0) == 1.0);
    CHECK(pred(0, 1) == 0.0);

    // Raw mode returns the activations unchanged.
    pred = predict(net, X, {0}, false);
    CHECK(pred(0, 0) == 0.5);
    CHECK(pred(0, 2) == 0.0);

    // Input is left unclamped afterwards.
    CHECK_FALSE(net.layer("input").clamped());
    CHECK(net.layer("output").clamped());
}

TEST_CASE("predict advances unit state but never weights") {
    Net net = build_pat_assoc(3, pat_assoc_specs());
    const Matrix fwt_before = net.projn("input_to_output").fwt();
    const Matrix wt_before = net.projn("input_to_output").wt();
    Dataset data = builtin_patterns(PatternTask::pat_assoc);
    const long cycles_before = net.cycle_count();
    ArrayXX pred = predict(net, data.X, data.train_idx, false);
    CHECK(pred.rows() == 4);
    CHECK(pred.cols() == 2);
    CHECK(net.cycle_count() == cycles_before + 4 * 50);
    CHECK(net.trial_count() == 0);
    CHECK(net.projn("input_to_output").fwt() == fwt_before);
    CHECK(net.projn("input_to_output").wt() == wt_before);
}

TEST_CASE("run_trial leaves a learned unclamped network") {
    Net net = build_pat_assoc(0, pat_assoc_specs());
    Dataset data = builtin_patterns(PatternTask::pat_assoc);
    run_trial(net, data.X.row(0).transpose(), data.Y.row(0).transpose(), 20,
              5);
    CHECK_FALSE(net.layer("input").clamped());
    CHECK_FALSE(net.layer("output").clamped());
    CHECK(net.trial_count() == 1);
    CHECK(net.cycle_count() == 25);
    CHECK(net.projn("input_to_output").dwt().cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("run_epoch ticks the epoch counter after the trials") {
    Net net = build_pat_assoc(0, pat_assoc_specs());
    Dataset data = builtin_patterns(PatternTask::pat_assoc);
    run_epoch(net, data.X, data.Y, data.train_idx, 10, 3);
    CHECK(net.trial_count() == 4);
    CHECK(net.epoch_count() == 1);

    run_epoch(net, data.X, data.Y, {}, 10, 3);
    CHECK(net.trial_count() == 4);
    CHECK(net.epoch_count() == 2);
}

TEST_CASE("pattern-mode training reports one row per epoch") {
    Net net = build_pat_assoc(1, pat_assoc_specs());
    Dataset data = builtin_patterns(PatternTask::pat_assoc);
    TrainOptions opt;
    opt.num_epochs = 3;
    opt.minus_cycles = 10;
    opt.plus_cycles = 3;
    TrainReport report = train(net, data, opt);
    CHECK_FALSE(report.has_accuracy);
    CHECK(report.epochs_run >= 1);
    CHECK(report.rows.size() == static_cast<std::size_t>(report.epochs_run));
    for (std::size_t i = 0; i < report.rows.size(); ++i) {
        CHECK(report.rows[i].epoch == static_cast<long>(i));
        CHECK(report.rows[i].train_loss >= 0.0);
    }
    if (report.converged_epoch >= 0) {
        // Convergence requires three straight zero-loss epochs.
        REQUIRE(report.rows.size() >= 3);
        for (std::size_t i = report.rows.size() - 3; i < report.rows.size();
             ++i) {
            CHECK(report.rows[i].train_loss == 0.0);
        }
    }
    // Logging is live again after training.
    CHECK(net.logging_enabled());
}

TEST_CASE("classification-mode training checkpoints every five epochs") {
    Net net(5);
    LayerSpec layer;
    net.new_layer("input", 2, layer);
    net.new_layer("output", 2, layer);
    net.new_projn("p", "input", "output");
    Dataset data;
    data.X = rows2x2(1, 0, 0, 1);
    data.Y = rows2x2(1, 0, 0, 1);
    data.train_idx = {0};
    data.test_idx = {1};
    TrainOptions opt;
    opt.num_epochs = 10;
    opt.minus_cycles = 5;
    opt.plus_cycles = 2;
    opt.classification = true;
    TrainReport report = train(net, data, opt);
    CHECK(report.has_accuracy);
    CHECK(report.epochs_run == 10);
    REQUIRE(report.rows.size() == 2);
    CHECK(report.rows[0].epoch == 4);
    CHECK(report.rows[1].epoch == 9);
    for (const auto& row : report.rows) {
        CHECK(row.train_accuracy >= 0.0);
        CHECK(row.train_accuracy <= 1.0);
        CHECK(row.test_accuracy >= 0.0);
        CHECK(row.test_accuracy <= 1.0);
        CHECK(row.train_loss >= 0.0);
        CHECK(row.test_loss >= 0.0);
    }
}

TEST_CASE("metrics csv layouts") {
    const std::string dir = fresh_dir("leabra7_harness_metrics");

    TrainReport pattern;
    pattern.rows.push_back({2, 0.125, 0, 0, 0});
    write_metrics_csv(pattern, dir + "/pattern.csv");
    CHECK(read_file(dir + "/pattern.csv") ==
          "epoch,train_loss\n2,0.125\n");

    TrainReport cls;
    cls.has_accuracy = true;
    cls.rows.push_back({4, 0.5, 0.75, 0.25, 1});
    write_metrics_csv(cls, dir + "/cls.csv");
    CHECK(read_file(dir + "/cls.csv") ==
          "epoch,train_loss,train_accuracy,test_loss,test_accuracy\n"
          "4,0.5,0.75,0.25,1\n");

    TrainReport empty;
    write_metrics_csv(empty, dir + "/empty.csv");
    CHECK(read_file(dir + "/empty.csv") == "epoch,train_loss\n");
}

TEST_CASE("emitters write non-empty artifacts") {
    const std::string dir = fresh_dir("leabra7_harness_emit");

    SUBCASE("loss plot") {
        TrainReport report;
        report.rows.push_back({0, 0.5, 0, 0, 0});
        report.rows.push_back({1, 0.25, 0, 0, 0});
        emit_loss_plot(report, "demo", dir);
        CHECK(read_file(dir + "/demo_loss.svg").find("<svg") !=
              std::string::npos);
        CHECK(read_file(dir + "/demo_loss.dat").find("train_loss") !=
              std::string::npos);
    }
    SUBCASE("layer logs") {
        LayerSpec spec;
        spec.log_on_cycle = {"unit_act", "avg_act"};
        Net net;
        net.new_layer("a", 2, spec);
        net.cycle();
        net.cycle();
        emit_layer_logs(net, "demo", dir);
        const std::string parts = read_file(dir + "/demo_a_cycle_parts.csv");
        CHECK(parts.find("time,unit,act") == 0);
        const std::string whole = read_file(dir + "/demo_a_cycle_whole.csv");
        CHECK(whole.find("time,avg_act") == 0);
        // Frames that never captured produce no file.
        CHECK_FALSE(
            std::filesystem::exists(dir + "/demo_a_trial_parts.csv"));
    }
    SUBCASE("dynamics trace") {
        Net net = build_two_neurons(0, two_neurons_specs());
        net.clamp_layer("input", Array::Constant(1, 1.0));
        for (int i = 0; i < 20; ++i) net.cycle();
        emit_two_neurons_plot(net, dir);
        const std::string svg = read_file(dir + "/two_neurons_dynamics.svg");
        CHECK(svg.find("<svg") != std::string::npos);
        CHECK(svg.find("v_m") != std::string::npos);
        CHECK(read_file(dir + "/two_neurons_dynamics.dat").find("# act") !=
              std::string::npos);
    }
}

TEST_CASE("builders wire the documented topologies") {
    SUBCASE("two neurons") {
        Net net = build_two_neurons(0, two_neurons_specs());
        CHECK(net.layer_names() ==
              std::vector<std::string>{"input", "output"});
        CHECK(net.projn_names() == std::vector<std::string>{"proj1"});
        CHECK(net.projn("proj1").wt()(0, 0) == 0.5);
    }
    SUBCASE("pattern association") {
        Net net = build_pat_assoc(0, pat_assoc_specs());
        CHECK(net.layer("input").size() == 4);
        CHECK(net.layer("output").size() == 2);
        CHECK(net.projn_names() ==
              std::vector<std::string>{"input_to_output"});
    }
    SUBCASE("error-driven with hidden layer") {
        Net net = build_err_hidden(0, 4, err_hidden_specs());
        CHECK(net.layer_names() ==
              std::vector<std::string>{"input", "hidden", "output"});
        CHECK(net.layer("hidden").size() == 4);
        CHECK(net.projn_names() ==
              std::vector<std::string>{"input_to_hidden", "hidden_to_output",
                                       "output_to_hidden"});
        CHECK(net.projn("output_to_hidden").spec().wt_scale_rel == 0.3);
        CHECK(net.projn("hidden_to_output").spec().wt_scale_rel == 1.0);
    }
    SUBCASE("error-driven control without hidden layer") {
        Net net = build_err_hidden(0, 0, err_hidden_specs());
        CHECK(net.layer_names() ==
              std::vector<std::string>{"input", "output"});
        CHECK(net.projn_names() ==
              std::vector<std::string>{"input_to_output"});
    }
    SUBCASE("iris") {
        Net net = build_iris(0, 36, 23, iris_specs());
        CHECK(net.layer("input").size() == 36);
        CHECK(net.layer("hidden").size() == 23);
        CHECK(net.layer("output").size() == 3);
        CHECK(net.projn("output_to_hidden").spec().wt_scale_rel == 0.3);
        CHECK_THROWS_AS(build_iris(0, 36, 0, iris_specs()),
                        std::invalid_argument);
    }
}

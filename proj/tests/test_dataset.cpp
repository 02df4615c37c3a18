#include <algorithm>
#include <fstream>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "doctest.h"
#include "leabra7/dataset.hpp"

using namespace leabra7;

TEST_CASE("builtin pattern sets") {
    Dataset pa = builtin_patterns(PatternTask::pat_assoc);
    CHECK(pa.X.rows() == 4);
    CHECK(pa.X.cols() == 4);
    CHECK(pa.Y.rows() == 4);
    CHECK(pa.Y.cols() == 2);
    CHECK(pa.train_idx == std::vector<Index>{0, 1, 2, 3});
    CHECK(pa.test_idx.empty());
    CHECK(pa.X(0, 0) == 1.0);
    CHECK(pa.X(3, 1) == 1.0);
    CHECK(pa.X(3, 3) == 0.0);
    // First two patterns map to the first output, last two to the second.
    for (int r = 0; r < 4; ++r) {
        CHECK(pa.Y(r, r < 2 ? 0 : 1) == 1.0);
        CHECK(pa.Y.row(r).sum() == 1.0);
    }

    Dataset eh = builtin_patterns(PatternTask::err_hidden);
    CHECK(eh.X.rows() == 4);
    // The error-driven set is not linearly separable: each input unit is
    // active in exactly one pattern of each output class.
    for (int c = 0; c < 4; ++c) {
        CHECK(eh.X.col(c).sum() == 2.0);
        Scalar first = eh.X(0, c) + eh.X(1, c);
        CHECK(first == 1.0);
    }
}

TEST_CASE("quantile transform averages tied ranks") {
    Array col(4);
    col << 1.0, 2.0, 2.0, 3.0;
    Array q = quantile_transform(col);
    CHECK(q[0] == doctest::Approx(0.125).epsilon(1e-12));
    CHECK(q[1] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(q[2] == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(q[3] == doctest::Approx(0.875).epsilon(1e-12));
}

TEST_CASE("quantile transform is order preserving") {
    Array col(5);
    col << 10.0, -3.0, 7.0, 0.0, 2.0;
    Array q = quantile_transform(col);
    for (Index i = 0; i < 5; ++i) {
        for (Index j = 0; j < 5; ++j) {
            if (col[i] < col[j]) CHECK(q[i] < q[j]);
        }
    }
    CHECK(q.minCoeff() > 0.0);
    CHECK(q.maxCoeff() < 1.0);
}

TEST_CASE("digitize counts boundaries at or below q") {
    CHECK(digitize(0.0, 10) == 1);
    CHECK(digitize(1.0, 10) == 10);
    CHECK(digitize(0.5, 10) == 5);
    CHECK(digitize(0.11, 10) == 1);
    CHECK(digitize(1.0 / 9.0, 10) == 2);
    CHECK(digitize(0.4, 2) == 1);
    CHECK(digitize(1.0, 2) == 2);
}

TEST_CASE("bundled iris table loads") {
    IrisTable t = load_iris_csv(LEABRA7_IRIS_CSV);
    CHECK(t.features.rows() == 150);
    CHECK(t.features.cols() == 4);
    CHECK(t.labels.size() == 150);
    CHECK(t.feature_names ==
          std::vector<std::string>{"sepal_length", "sepal_width",
                                   "petal_length", "petal_width"});
    std::set<std::string> classes(t.labels.begin(), t.labels.end());
    CHECK(classes.size() == 3);
}

TEST_CASE("iris preprocessing matches the reference geometry") {
    IrisTable t = load_iris_csv(LEABRA7_IRIS_CSV);
    Dataset d = preprocess_iris(t, 10, 0, 0.2);
    CHECK(d.X.cols() == 36);
    CHECK(d.X.rows() == 150);
    CHECK(d.Y.cols() == 3);
    CHECK(d.train_idx.size() == 120);
    CHECK(d.test_idx.size() == 30);
    CHECK(d.feature_names.size() == 36);
    CHECK(d.label_names ==
          std::vector<std::string>{"setosa", "versicolor", "virginica"});

    // One active column per feature block, every row.
    Index offset = 0;
    for (const auto& bins : d.feature_bins) {
        for (Index r = 0; r < d.X.rows(); ++r) {
            Scalar sum = 0;
            for (std::size_t c = 0; c < bins.size(); ++c) {
                sum += d.X(r, offset + static_cast<Index>(c));
            }
            CHECK(sum == 1.0);
        }
        offset += static_cast<Index>(bins.size());
    }
    CHECK(offset == 36);
    for (Index r = 0; r < d.Y.rows(); ++r) {
        CHECK(d.Y.row(r).sum() == 1.0);
    }
}

TEST_CASE("iris preprocessing is seed deterministic") {
    IrisTable t = load_iris_csv(LEABRA7_IRIS_CSV);
    Dataset a = preprocess_iris(t, 10, 42, 0.2);
    Dataset a2 = preprocess_iris(t, 10, 42, 0.2);
    CHECK((a.X == a2.X).all());
    CHECK((a.Y == a2.Y).all());
    // Different seed: some row must move (150 rows make a collision
    // vanishingly unlikely).
    Dataset c = preprocess_iris(t, 10, 43, 0.2);
    CHECK_FALSE((a.Y == c.Y).all());
}

TEST_CASE("one-hot encoding is invertible at the bin level") {
    IrisTable raw;
    raw.features = ArrayXX(8, 2);
    raw.features << 1.0, 5.0,
                    2.0, 5.0,
                    2.0, 4.0,
                    3.0, 4.0,
                    4.0, 3.0,
                    4.0, 3.0,
                    5.0, 2.0,
                    6.0, 1.0;
    raw.labels = {"a", "b", "a", "b", "a", "b", "a", "b"};
    raw.feature_names = {"f0", "f1"};
    const int bins = 4;
    Dataset d = preprocess_iris(raw, bins, 5, 0.25);

    // Recompute the expected bin tuple for every raw row.
    std::multiset<std::vector<int>> expected;
    Array q0 = quantile_transform(raw.features.col(0));
    Array q1 = quantile_transform(raw.features.col(1));
    for (Index r = 0; r < 8; ++r) {
        expected.insert({digitize(q0[r], bins), digitize(q1[r], bins)});
    }

    // Decode each shuffled one-hot row back to its bin tuple.
    std::multiset<std::vector<int>> decoded;
    for (Index r = 0; r < d.X.rows(); ++r) {
        std::vector<int> tuple;
        Index offset = 0;
        for (const auto& bin_ids : d.feature_bins) {
            int found = -1;
            for (std::size_t c = 0; c < bin_ids.size(); ++c) {
                if (d.X(r, offset + static_cast<Index>(c)) == 1.0) {
                    found = bin_ids[c];
                }
            }
            REQUIRE(found >= 0);
            tuple.push_back(found);
            offset += static_cast<Index>(bin_ids.size());
        }
        decoded.insert(tuple);
    }
    CHECK(decoded == expected);
    CHECK(d.train_idx.size() == 6);
    CHECK(d.test_idx.size() == 2);
}

TEST_CASE("a constant feature collapses to one column") {
    IrisTable raw;
    raw.features = ArrayXX(4, 2);
    raw.features << 1.0, 7.0,
                    2.0, 7.0,
                    3.0, 7.0,
                    4.0, 7.0;
    raw.labels = {"a", "a", "b", "b"};
    raw.feature_names = {"varies", "fixed"};
    Dataset d = preprocess_iris(raw, 10, 0, 0.0);
    REQUIRE(d.feature_bins.size() == 2);
    CHECK(d.feature_bins[1].size() == 1);
    // All rows share the single observed bin for the fixed feature.
    const Index fixed_col = d.X.cols() - 1;
    CHECK((d.X.col(fixed_col) == 1.0).all());
    CHECK(d.test_idx.empty());
    CHECK(d.train_idx.size() == 4);
}

TEST_CASE("preprocessing validates its arguments") {
    IrisTable raw;
    raw.features = ArrayXX(4, 1);
    raw.features << 1, 2, 3, 4;
    raw.labels = {"a", "a", "b", "b"};
    raw.feature_names = {"f"};
    CHECK_THROWS_AS(preprocess_iris(raw, 1, 0, 0.2), std::invalid_argument);
    CHECK_THROWS_AS(preprocess_iris(raw, 10, 0, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(preprocess_iris(raw, 10, 0, -0.1), std::invalid_argument);
    raw.labels.pop_back();
    CHECK_THROWS_AS(preprocess_iris(raw, 10, 0, 0.2), std::invalid_argument);
}

TEST_CASE("malformed csv inputs are rejected") {
    auto write_file = [](const std::string& path, const std::string& text) {
        std::ofstream out(path);
        out << text;
    };
    const std::string dir = "/tmp";

    SUBCASE("missing file") {
        CHECK_THROWS_AS(load_iris_csv("/nonexistent/iris.csv"),
                        std::runtime_error);
    }
    SUBCASE("wrong header width") {
        const std::string p = dir + "/leabra7_iris_bad_header.csv";
        write_file(p, "a,b,c\n1,2,3\n");
        CHECK_THROWS_AS(load_iris_csv(p), std::runtime_error);
    }
    SUBCASE("short data row") {
        const std::string p = dir + "/leabra7_iris_short_row.csv";
        write_file(p, "a,b,c,d,label\n1,2,3,setosa\n");
        CHECK_THROWS_AS(load_iris_csv(p), std::runtime_error);
    }
    SUBCASE("non-numeric feature") {
        const std::string p = dir + "/leabra7_iris_bad_value.csv";
        write_file(p, "a,b,c,d,label\n1,2,x,4,setosa\n");
        CHECK_THROWS_AS(load_iris_csv(p), std::runtime_error);
    }
    SUBCASE("no data rows") {
        const std::string p = dir + "/leabra7_iris_empty.csv";
        write_file(p, "a,b,c,d,label\n");
        CHECK_THROWS_AS(load_iris_csv(p), std::runtime_error);
    }
}

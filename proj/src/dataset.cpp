#include "leabra7/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "leabra7/rng.hpp"

namespace leabra7 {

namespace {

ArrayXX from_rows(const std::vector<std::vector<Scalar>>& rows) {
    ArrayXX m(rows.size(), rows[0].size());
    for (std::size_t i = 0; i < rows.size(); ++i) {
        for (std::size_t j = 0; j < rows[i].size(); ++j) {
            m(i, j) = rows[i][j];
        }
    }
    return m;
}

void strip_cr(std::string& line) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
}

}  // namespace

Dataset builtin_patterns(PatternTask task) {
    Dataset d;
    if (task == PatternTask::pat_assoc) {
        d.X = from_rows({{1, 1, 1, 0},
                         {0, 1, 1, 1},
                         {0, 1, 0, 1},
                         {0, 1, 0, 0}});
    } else {
        d.X = from_rows({{1, 0, 1, 0},
                         {0, 1, 0, 1},
                         {1, 1, 0, 0},
                         {0, 0, 1, 1}});
    }
    d.Y = from_rows({{1, 0}, {1, 0}, {0, 1}, {0, 1}});
    d.train_idx = {0, 1, 2, 3};
    return d;
}

IrisTable load_iris_csv(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path + " for reading");
    std::string line;
    if (!std::getline(in, line)) {
        throw std::runtime_error("malformed iris table: empty file");
    }
    strip_cr(line);
    IrisTable t;
    {
        std::stringstream header(line);
        std::string field;
        while (std::getline(header, field, ',')) {
            t.feature_names.push_back(field);
        }
        if (t.feature_names.size() != 5) {
            throw std::runtime_error(
                "malformed iris table: expected 5 header fields");
        }
        t.feature_names.pop_back();  // label column
    }
    std::vector<std::vector<Scalar>> rows;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        strip_cr(line);
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 5) {
            throw std::runtime_error("malformed iris table: line " +
                                     std::to_string(line_no));
        }
        std::vector<Scalar> values;
        for (int j = 0; j < 4; ++j) {
            try {
                std::size_t used = 0;
                values.push_back(std::stod(fields[j], &used));
                if (used != fields[j].size()) throw std::invalid_argument("");
            } catch (const std::exception&) {
                throw std::runtime_error("malformed iris table: line " +
                                         std::to_string(line_no));
            }
        }
        rows.push_back(values);
        t.labels.push_back(fields[4]);
    }
    if (rows.empty()) {
        throw std::runtime_error("malformed iris table: no data rows");
    }
    t.features = from_rows(rows);
    return t;
}

Array quantile_transform(const Array& column) {
    const Index n = column.size();
    std::vector<Index> order(n);
    std::iota(order.begin(), order.end(), Index{0});
    std::sort(order.begin(), order.end(),
              [&](Index a, Index b) { return column[a] < column[b]; });
    Array q(n);
    Index i = 0;
    while (i < n) {
        Index j = i;
        while (j + 1 < n && column[order[j + 1]] == column[order[i]]) ++j;
        // 1-based ranks i+1 .. j+1 share the averaged rank.
        const Scalar avg_rank = static_cast<Scalar>(i + j) / 2.0 + 1.0;
        const Scalar value = (avg_rank - 0.5) / static_cast<Scalar>(n);
        for (Index k = i; k <= j; ++k) q[order[k]] = value;
        i = j + 1;
    }
    return q;
}

int digitize(Scalar q, int bins) {
    int idx = 0;
    for (int b = 0; b < bins; ++b) {
        const Scalar boundary =
            static_cast<Scalar>(b) / static_cast<Scalar>(bins - 1);
        if (boundary <= q) ++idx;
    }
    return idx;
}

Dataset preprocess_iris(const IrisTable& raw, int bins, std::uint64_t seed,
                        Scalar test_frac) {
    if (bins < 2) throw std::invalid_argument("bins must be >= 2");
    if (test_frac < 0.0 || test_frac >= 1.0) {
        throw std::invalid_argument("test_frac must lie in [0, 1)");
    }
    const Index n = raw.features.rows();
    const Index n_features = raw.features.cols();
    if (n < 2 || n_features < 1 ||
        raw.labels.size() != static_cast<std::size_t>(n)) {
        throw std::invalid_argument("malformed raw table");
    }

    // Bin index per sample per feature, then one-hot over observed bins.
    std::vector<std::vector<int>> bin_idx(n_features);
    std::vector<std::vector<int>> observed(n_features);
    Index width = 0;
    for (Index f = 0; f < n_features; ++f) {
        Array q = quantile_transform(raw.features.col(f));
        std::set<int> seen;
        bin_idx[f].resize(n);
        for (Index r = 0; r < n; ++r) {
            bin_idx[f][r] = digitize(q[r], bins);
            seen.insert(bin_idx[f][r]);
        }
        observed[f].assign(seen.begin(), seen.end());
        width += static_cast<Index>(observed[f].size());
    }

    Dataset d;
    d.X = ArrayXX::Zero(n, width);
    d.feature_bins = observed;
    Index offset = 0;
    for (Index f = 0; f < n_features; ++f) {
        std::map<int, Index> column_of;
        for (std::size_t c = 0; c < observed[f].size(); ++c) {
            column_of[observed[f][c]] = offset + static_cast<Index>(c);
            std::string base = f < static_cast<Index>(raw.feature_names.size())
                                   ? raw.feature_names[f]
                                   : "feature" + std::to_string(f);
            d.feature_names.push_back(base + ":q" +
                                      std::to_string(observed[f][c]));
        }
        for (Index r = 0; r < n; ++r) {
            d.X(r, column_of.at(bin_idx[f][r])) = 1.0;
        }
        offset += static_cast<Index>(observed[f].size());
    }

    std::set<std::string> classes(raw.labels.begin(), raw.labels.end());
    d.label_names.assign(classes.begin(), classes.end());
    std::map<std::string, Index> label_col;
    for (std::size_t c = 0; c < d.label_names.size(); ++c) {
        label_col[d.label_names[c]] = static_cast<Index>(c);
    }
    d.Y = ArrayXX::Zero(n, d.label_names.size());
    for (Index r = 0; r < n; ++r) {
        d.Y(r, label_col.at(raw.labels[r])) = 1.0;
    }

    // Fisher-Yates shuffle of row order, then a head/tail split.
    Rng rng(seed);
    std::vector<Index> perm(n);
    std::iota(perm.begin(), perm.end(), Index{0});
    for (Index i = n - 1; i > 0; --i) {
        const Index j = static_cast<Index>(rng.raw() % (i + 1));
        std::swap(perm[i], perm[j]);
    }
    ArrayXX xs(n, d.X.cols());
    ArrayXX ys(n, d.Y.cols());
    for (Index r = 0; r < n; ++r) {
        xs.row(r) = d.X.row(perm[r]);
        ys.row(r) = d.Y.row(perm[r]);
    }
    d.X = xs;
    d.Y = ys;
    const Index n_train =
        static_cast<Index>(std::lround((1.0 - test_frac) * n));
    for (Index r = 0; r < n; ++r) {
        (r < n_train ? d.train_idx : d.test_idx).push_back(r);
    }
    return d;
}

}  // namespace leabra7

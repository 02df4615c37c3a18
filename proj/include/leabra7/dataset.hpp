#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "leabra7/types.hpp"

namespace leabra7 {

// Input/target patterns plus an optional train/test split. Pattern tasks
// use every row for training and leave test_idx empty.
struct Dataset {
    ArrayXX X;  // n_samples x n_input, values in [0, 1]
    ArrayXX Y;  // n_samples x n_output
    std::vector<std::string> feature_names;  // one per X column
    std::vector<std::string> label_names;    // one per Y column
    std::vector<Index> train_idx;
    std::vector<Index> test_idx;
    // IRIS only: per raw feature, the observed bin id behind each one-hot
    // column, in column order.
    std::vector<std::vector<int>> feature_bins;
};

enum class PatternTask { pat_assoc, err_hidden };

// The two builtin 4-pattern training sets.
Dataset builtin_patterns(PatternTask task);

struct IrisTable {
    ArrayXX features;  // n_rows x 4
    std::vector<std::string> labels;
    std::vector<std::string> feature_names;
};

// Reads the bundled CSV layout: a header line followed by rows of four
// numeric fields and a species label.
IrisTable load_iris_csv(const std::string& path);

// Empirical quantile transform: averaged ranks mapped into (0, 1).
Array quantile_transform(const Array& column);

// Index of the bin a quantile falls in, against `bins` equally spaced
// boundaries over [0, 1]: the count of boundaries <= q.
int digitize(Scalar q, int bins);

// Quantile-transform each feature, digitize, one-hot encode observed bins
// only, one-hot the labels (columns in sorted name order), then shuffle
// rows by seed and split off the last test_frac fraction as the test set.
Dataset preprocess_iris(const IrisTable& raw, int bins, std::uint64_t seed,
                        Scalar test_frac);

}  // namespace leabra7

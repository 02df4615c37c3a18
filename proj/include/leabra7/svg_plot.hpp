#pragma once

#include <string>
#include <vector>

#include "leabra7/types.hpp"

namespace leabra7 {

struct Series {
    std::string label;
    std::vector<Scalar> x;
    std::vector<Scalar> y;
};

// Minimal self-contained multi-series line plot.
void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<Series>& series);

// The same series as gnuplot-ready blocks ("index N" per series).
void write_dat(const std::string& path, const std::vector<Series>& series);

}  // namespace leabra7

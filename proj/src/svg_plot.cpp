#include "leabra7/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "leabra7/log.hpp"

namespace leabra7 {

namespace {

const char* kPalette[] = {"#1f77b4", "#ff7f0e", "#2ca02c", "#d62728",
                          "#9467bd", "#8c564b", "#e377c2", "#7f7f7f"};
constexpr int kPaletteSize = 8;

constexpr double kWidth = 960;
constexpr double kHeight = 560;
constexpr double kLeft = 70;
constexpr double kRight = kWidth - 170;
constexpr double kTop = 50;
constexpr double kBottom = kHeight - 60;

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        if (c == '&') out += "&amp;";
        else if (c == '<') out += "&lt;";
        else if (c == '>') out += "&gt;";
        else out += c;
    }
    return out;
}

// Tick step rounded to a 1/2/5 decade multiple.
double nice_step(double range) {
    if (range <= 0) return 1.0;
    const double raw = range / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double frac = raw / mag;
    double nice = 10.0;
    if (frac <= 1.0) nice = 1.0;
    else if (frac <= 2.0) nice = 2.0;
    else if (frac <= 5.0) nice = 5.0;
    return nice * mag;
}

std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

std::string tick_label(double v) {
    if (v == 0.0) return "0";  // avoid "-0"
    double r = std::round(v * 1e9) / 1e9;
    return format_number(r);
}

}  // namespace

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& x_label, const std::string& y_label,
                    const std::vector<Series>& series) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");

    double x_min = std::numeric_limits<double>::infinity();
    double x_max = -x_min;
    double y_min = x_min;
    double y_max = -x_min;
    for (const auto& s : series) {
        for (double v : s.x) {
            x_min = std::min(x_min, v);
            x_max = std::max(x_max, v);
        }
        for (double v : s.y) {
            y_min = std::min(y_min, v);
            y_max = std::max(y_max, v);
        }
    }
    if (!std::isfinite(x_min)) {
        x_min = 0;
        x_max = 1;
        y_min = 0;
        y_max = 1;
    }
    if (x_max == x_min) x_max = x_min + 1;
    if (y_max == y_min) y_max = y_min + 1;
    const double y_pad = 0.05 * (y_max - y_min);
    y_min -= y_pad;
    y_max += y_pad;

    auto sx = [&](double v) {
        return kLeft + (v - x_min) / (x_max - x_min) * (kRight - kLeft);
    };
    auto sy = [&](double v) {
        return kBottom - (v - y_min) / (y_max - y_min) * (kBottom - kTop);
    };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth
        << "\" height=\"" << kHeight << "\" viewBox=\"0 0 " << kWidth << " "
        << kHeight << "\">\n";
    out << "<rect width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" fill=\"white\"/>\n";
    out << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\"28\" "
        << "font-family=\"sans-serif\" font-size=\"18\" "
        << "text-anchor=\"middle\">" << escape(title) << "</text>\n";

    const double x_step = nice_step(x_max - x_min);
    for (double t = std::ceil(x_min / x_step) * x_step; t <= x_max + 1e-9;
         t += x_step) {
        const double X = sx(t);
        out << "<line x1=\"" << px(X) << "\" y1=\"" << px(kTop) << "\" x2=\""
            << px(X) << "\" y2=\"" << px(kBottom)
            << "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << px(X) << "\" y=\"" << px(kBottom + 20)
            << "\" font-family=\"sans-serif\" font-size=\"12\" "
            << "text-anchor=\"middle\">" << tick_label(t) << "</text>\n";
    }
    const double y_step = nice_step(y_max - y_min);
    for (double t = std::ceil(y_min / y_step) * y_step; t <= y_max + 1e-9;
         t += y_step) {
        const double Y = sy(t);
        out << "<line x1=\"" << px(kLeft) << "\" y1=\"" << px(Y) << "\" x2=\""
            << px(kRight) << "\" y2=\"" << px(Y)
            << "\" stroke=\"#e0e0e0\" stroke-width=\"1\"/>\n";
        out << "<text x=\"" << px(kLeft - 8) << "\" y=\"" << px(Y + 4)
            << "\" font-family=\"sans-serif\" font-size=\"12\" "
            << "text-anchor=\"end\">" << tick_label(t) << "</text>\n";
    }
    out << "<line x1=\"" << px(kLeft) << "\" y1=\"" << px(kBottom)
        << "\" x2=\"" << px(kRight) << "\" y2=\"" << px(kBottom)
        << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    out << "<line x1=\"" << px(kLeft) << "\" y1=\"" << px(kTop) << "\" x2=\""
        << px(kLeft) << "\" y2=\"" << px(kBottom)
        << "\" stroke=\"black\" stroke-width=\"1.5\"/>\n";
    out << "<text x=\"" << (kLeft + kRight) / 2 << "\" y=\""
        << px(kHeight - 14)
        << "\" font-family=\"sans-serif\" font-size=\"14\" "
        << "text-anchor=\"middle\">" << escape(x_label) << "</text>\n";
    out << "<text x=\"20\" y=\"" << (kTop + kBottom) / 2
        << "\" font-family=\"sans-serif\" font-size=\"14\" "
        << "text-anchor=\"middle\" transform=\"rotate(-90 20 "
        << (kTop + kBottom) / 2 << ")\">" << escape(y_label) << "</text>\n";

    for (std::size_t s = 0; s < series.size(); ++s) {
        const auto& ser = series[s];
        if (ser.x.empty()) continue;
        const char* color = kPalette[s % kPaletteSize];
        out << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.6\" points=\"";
        for (std::size_t i = 0; i < ser.x.size(); ++i) {
            if (i > 0) out << ' ';
            out << px(sx(ser.x[i])) << ',' << px(sy(ser.y[i]));
        }
        out << "\"/>\n";
    }

    const double lx = kRight + 14;
    double ly = kTop + 10;
    for (std::size_t s = 0; s < series.size(); ++s) {
        const char* color = kPalette[s % kPaletteSize];
        out << "<line x1=\"" << px(lx) << "\" y1=\"" << px(ly) << "\" x2=\""
            << px(lx + 24) << "\" y2=\"" << px(ly) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        out << "<text x=\"" << px(lx + 30) << "\" y=\"" << px(ly + 4)
            << "\" font-family=\"sans-serif\" font-size=\"13\">"
            << escape(series[s].label) << "</text>\n";
        ly += 20;
    }
    out << "</svg>\n";
    if (!out) throw std::runtime_error("write failed: " + path);
}

void write_dat(const std::string& path, const std::vector<Series>& series) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    for (std::size_t s = 0; s < series.size(); ++s) {
        if (s > 0) out << "\n\n";
        out << "# " << series[s].label << '\n';
        for (std::size_t i = 0; i < series[s].x.size(); ++i) {
            out << format_number(series[s].x[i]) << ' '
                << format_number(series[s].y[i]) << '\n';
        }
    }
    if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace leabra7

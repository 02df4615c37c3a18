#include "leabra7/log.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace leabra7 {

std::string format_number(Scalar v) {
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    if (ec != std::errc()) throw std::runtime_error("number formatting failed");
    return std::string(buf, ptr);
}

std::string short_attribute_name(const std::string& name) {
    if (name.rfind("unit_", 0) == 0) return name.substr(5);
    if (name.rfind("conn_", 0) == 0) return name.substr(5);
    return name;
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path + " for writing");
    return out;
}

void write_cell(std::ofstream& out, Scalar v, bool as_integer) {
    if (as_integer) {
        out << static_cast<long long>(v);
    } else {
        out << format_number(v);
    }
}

}  // namespace

void write_csv(const Table& t, const std::string& path) {
    auto out = open_out(path);
    for (std::size_t c = 0; c < t.columns.size(); ++c) {
        if (c > 0) out << ',';
        out << t.columns[c];
    }
    out << '\n';
    for (const auto& row : t.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (c > 0) out << ',';
            bool as_int = c < t.integer_column.size() && t.integer_column[c];
            write_cell(out, row[c], as_int);
        }
        out << '\n';
    }
}

void LogFrame::capture(long time, const Layer& layer) {
    for (const auto& attr : whole_attributes) {
        whole.push_back({time, attr, layer.layer_attribute(attr)});
    }
    if (part_attributes.empty()) return;
    std::vector<Array> values;
    values.reserve(part_attributes.size());
    for (const auto& attr : part_attributes) {
        values.push_back(layer.unit_attribute(attr));
    }
    for (Index i = 0; i < layer.size(); ++i) {
        for (std::size_t a = 0; a < part_attributes.size(); ++a) {
            parts.push_back({time, i, part_attributes[a], values[a][i]});
        }
    }
}

void write_parts_csv(const LogFrame& frame, const std::string& path) {
    auto out = open_out(path);
    out << "time,unit";
    for (const auto& attr : frame.part_attributes) {
        out << ',' << short_attribute_name(attr);
    }
    out << '\n';
    // Rows arrive grouped by (time, unit) with attributes in declaration
    // order, so the pivot is a straight scan.
    const std::size_t stride = frame.part_attributes.size();
    if (stride == 0) return;
    if (frame.parts.size() % stride != 0) {
        throw std::runtime_error("ragged parts frame");
    }
    for (std::size_t i = 0; i < frame.parts.size(); i += stride) {
        out << frame.parts[i].time << ',' << frame.parts[i].part;
        for (std::size_t a = 0; a < stride; ++a) {
            out << ',' << format_number(frame.parts[i + a].value);
        }
        out << '\n';
    }
}

void write_whole_csv(const LogFrame& frame, const std::string& path) {
    auto out = open_out(path);
    out << "time";
    for (const auto& attr : frame.whole_attributes) {
        out << ',' << short_attribute_name(attr);
    }
    out << '\n';
    const std::size_t stride = frame.whole_attributes.size();
    if (stride == 0) return;
    if (frame.whole.size() % stride != 0) {
        throw std::runtime_error("ragged whole frame");
    }
    for (std::size_t i = 0; i < frame.whole.size(); i += stride) {
        out << frame.whole[i].time;
        for (std::size_t a = 0; a < stride; ++a) {
            out << ',' << format_number(frame.whole[i + a].value);
        }
        out << '\n';
    }
}

}  // namespace leabra7

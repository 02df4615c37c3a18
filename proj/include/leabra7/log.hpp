#pragma once

#include <string>
#include <vector>

#include "leabra7/layer.hpp"
#include "leabra7/types.hpp"

namespace leabra7 {

// Shortest round-trip decimal rendering ('.' decimal point, no locale).
std::string format_number(Scalar v);

// unit_act -> act, conn_wt -> wt; whole-layer names pass through.
std::string short_attribute_name(const std::string& name);

// Instantaneous observation snapshot, one observation per row.
struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Scalar>> rows;
    // Columns rendered as integers in CSV output (indices, times).
    std::vector<bool> integer_column;
};

void write_csv(const Table& t, const std::string& path);

struct WholeLogRow {
    long time;
    std::string attribute;
    Scalar value;
};

struct PartLogRow {
    long time;
    Index part;
    std::string attribute;
    Scalar value;
};

// Accumulated tidy history for one layer at one frequency. whole holds
// layer-level attributes, parts unit-level ones; rows are appended in
// capture order, so times are non-decreasing.
struct LogFrame {
    std::vector<std::string> whole_attributes;
    std::vector<std::string> part_attributes;
    std::vector<WholeLogRow> whole;
    std::vector<PartLogRow> parts;

    bool empty() const { return whole.empty() && parts.empty(); }
    void capture(long time, const Layer& layer);
};

// Wide CSV pivots: parts -> "time,unit,<attr>..."; whole -> "time,<attr>...".
void write_parts_csv(const LogFrame& frame, const std::string& path);
void write_whole_csv(const LogFrame& frame, const std::string& path);

}  // namespace leabra7

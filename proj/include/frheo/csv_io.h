#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "frheo/frac_ops.h"
#include "frheo/nutting.h"

namespace frheo {

/// 15 significant digits, '.' separator, independent of the global locale.
std::string format_number(double v);

/// Shortest representation that parses back to the same double.
std::string format_shortest(double v);

/// Locale-independent parse of a whole cell; throws FormatError on trailing junk.
double parse_number(const std::string& cell, std::size_t line);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
    std::vector<std::size_t> line_numbers;  // 1-based file line of each row
};

/// Reads a comma-separated numeric table with a mandatory header row.
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

/// Creep records from columns t, stress, strain (any order, case-insensitive).
std::vector<CreepRecord> creep_records_from(const CsvTable& table);
std::vector<CreepRecord> ingest_creep_csv(const std::string& path);

/// Uniformly sampled signal from columns t, value. Spacing must be uniform to
/// 1e-9 relative.
SignalSeries signal_from(const CsvTable& table);
SignalSeries ingest_signal_csv(const std::string& path);

/// Writes a header row and equal-length numeric columns, LF line endings.
void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns);

}  // namespace frheo

#include "frheo/csv_io.h"

#include <algorithm>
#include <array>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "frheo/errors.h"

namespace frheo {

namespace {

std::string trim(std::string s) {
    auto not_space = [](unsigned char c) { return !std::isspace(c); };
    s.erase(s.begin(), std::find_if(s.begin(), s.end(), not_space));
    s.erase(std::find_if(s.rbegin(), s.rend(), not_space).base(), s.end());
    return s;
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return std::tolower(c); });
    return s;
}

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream is(line);
    while (std::getline(is, cell, ',')) cells.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    return cells;
}

std::size_t column(const CsvTable& table, const std::string& name) {
    for (std::size_t i = 0; i < table.header.size(); ++i)
        if (lower(table.header[i]) == name) return i;
    throw FormatError("missing column '" + name + "'");
}

std::string to_chars_string(double v, int precision, bool shortest) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::array<char, 64> buf{};
    const auto res = shortest
                         ? std::to_chars(buf.data(), buf.data() + buf.size(), v)
                         : std::to_chars(buf.data(), buf.data() + buf.size(), v,
                                         std::chars_format::general, precision);
    return std::string(buf.data(), res.ptr);
}

}  // namespace

std::string format_number(double v) { return to_chars_string(v, 15, false); }

std::string format_shortest(double v) { return to_chars_string(v, 0, true); }

double parse_number(const std::string& cell, std::size_t line) {
    double v = 0.0;
    const char* first = cell.data();
    const char* last = cell.data() + cell.size();
    if (first != last && *first == '+') ++first;
    const auto res = std::from_chars(first, last, v);
    if (cell.empty() || res.ec != std::errc() || res.ptr != last) {
        std::ostringstream os;
        os << "line " << line << ": non-numeric cell '" << cell << "'";
        throw FormatError(os.str());
    }
    return v;
}

CsvTable read_csv(std::istream& in) {
    CsvTable table;
    std::string line;
    std::size_t line_no = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty()) continue;
        auto cells = split(line);
        if (!have_header) {
            table.header = std::move(cells);
            have_header = true;
            continue;
        }
        if (cells.size() != table.header.size()) {
            std::ostringstream os;
            os << "line " << line_no << ": expected " << table.header.size() << " cells, found "
               << cells.size();
            throw FormatError(os.str());
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) row.push_back(parse_number(c, line_no));
        table.rows.push_back(std::move(row));
        table.line_numbers.push_back(line_no);
    }
    if (!have_header) throw FormatError("missing header row");
    return table;
}

CsvTable read_csv_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open input file '" + path + "'");
    return read_csv(in);
}

std::vector<CreepRecord> creep_records_from(const CsvTable& table) {
    const std::size_t ct = column(table, "t");
    const std::size_t cs = column(table, "stress");
    const std::size_t ce = column(table, "strain");
    std::vector<CreepRecord> out;
    out.reserve(table.rows.size());
    for (std::size_t i = 0; i < table.rows.size(); ++i) {
        const auto& row = table.rows[i];
        CreepRecord r{row[ct], row[cs], row[ce]};
        if (!(r.t > 0.0 && r.stress > 0.0 && r.strain > 0.0)) {
            std::ostringstream os;
            os << "line " << table.line_numbers[i] << ": creep records need positive t, stress and strain";
            throw FormatError(os.str());
        }
        out.push_back(r);
    }
    return out;
}

std::vector<CreepRecord> ingest_creep_csv(const std::string& path) {
    return creep_records_from(read_csv_file(path));
}

SignalSeries signal_from(const CsvTable& table) {
    const std::size_t ct = column(table, "t");
    const std::size_t cv = column(table, "value");
    const std::size_t n = table.rows.size();
    if (n < 2) throw FormatError("signal files need at least two samples");
    SignalSeries s;
    s.t0 = table.rows.front()[ct];
    s.dt = (table.rows.back()[ct] - s.t0) / static_cast<double>(n - 1);
    if (!(s.dt > 0.0)) throw FormatError("signal times must increase");
    for (std::size_t i = 1; i < n; ++i) {
        const double step = table.rows[i][ct] - table.rows[i - 1][ct];
        if (std::abs(step - s.dt) > 1e-9 * s.dt) {
            std::ostringstream os;
            os.precision(15);
            os << "line " << table.line_numbers[i] << ": non-uniform time step " << step
               << " (expected " << s.dt << ")";
            throw FormatError(os.str());
        }
    }
    s.values.reserve(n);
    for (const auto& row : table.rows) s.values.push_back(row[cv]);
    return s;
}

SignalSeries ingest_signal_csv(const std::string& path) { return signal_from(read_csv_file(path)); }

void write_csv(std::ostream& out, const std::vector<std::string>& header,
               const std::vector<std::vector<double>>& columns) {
    for (std::size_t i = 0; i < header.size(); ++i) out << (i ? "," : "") << header[i];
    out << '\n';
    const std::size_t rows = columns.empty() ? 0 : columns.front().size();
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t c = 0; c < columns.size(); ++c) out << (c ? "," : "") << format_number(columns[c][r]);
        out << '\n';
    }
}

}  // namespace frheo

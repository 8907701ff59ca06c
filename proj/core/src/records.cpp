#include "otd/io/records.hpp"

#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include "otd/errors.hpp"

namespace otd {

namespace {

void append_number(std::string& row, double v) {
    char buf[32];
    auto [p, ec] = std::to_chars(buf, buf + sizeof buf, v);  // shortest round-trip form
    if (ec != std::errc()) throw io_error("RecordWriter: number formatting failed");
    row.append(buf, p);
}

}  // namespace

RecordWriter::RecordWriter(const std::string& path, const std::vector<std::string>& value_columns)
    : path_(path), ncols_(value_columns.size()) {
    for (const auto& c : value_columns) {
        if (c.empty() || c.find(',') != std::string::npos || c == "t" || c == "source")
            throw contract_violation("RecordWriter: bad column name '" + c + "'");
    }
    f_ = std::fopen(path.c_str(), "wb");
    if (!f_) throw io_error("RecordWriter: cannot open '" + path + "' for writing");
    std::string header = "t";
    for (const auto& c : value_columns) {
        header += ',';
        header += c;
    }
    header += ",source\n";
    if (std::fwrite(header.data(), 1, header.size(), f_) != header.size() || std::fflush(f_) != 0)
        throw io_error("RecordWriter: write failed on '" + path + "'");
}

RecordWriter::~RecordWriter() {
    if (f_) std::fclose(f_);
}

void RecordWriter::write(double t, std::span<const double> values, std::string_view source) {
    if (values.size() != ncols_) throw contract_violation("RecordWriter: column count mismatch");
    if (rows_ > 0 && !(t > last_t_))
        throw contract_violation("RecordWriter: time must strictly increase");
    std::string row;
    row.reserve(24 * (ncols_ + 2));
    append_number(row, t);
    for (double v : values) {
        row += ',';
        append_number(row, v);
    }
    row += ',';
    row.append(source.data(), source.size());
    row += '\n';
    if (std::fwrite(row.data(), 1, row.size(), f_) != row.size() || std::fflush(f_) != 0)
        throw io_error("RecordWriter: write failed on '" + path_ + "'");
    last_t_ = t;
    ++rows_;
}

bool RecordTable::has_column(const std::string& name) const {
    for (const auto& c : columns)
        if (c == name) return true;
    return false;
}

const std::vector<double>& RecordTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return data[i];
    throw io_error("records: no column named '" + name + "'");
}

RecordTable read_records(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw io_error("records: cannot open '" + path + "'");
    std::string line;
    if (!std::getline(in, line)) throw io_error("records: '" + path + "' is empty");

    auto split = [](const std::string& s) {
        std::vector<std::string> parts;
        std::size_t start = 0;
        while (true) {
            const auto pos = s.find(',', start);
            if (pos == std::string::npos) {
                parts.push_back(s.substr(start));
                break;
            }
            parts.push_back(s.substr(start, pos - start));
            start = pos + 1;
        }
        return parts;
    };

    RecordTable table;
    {
        auto header = split(line);
        if (header.size() < 2 || header.front() != "t" || header.back() != "source")
            throw io_error("records: '" + path + "' header must be t,...,source");
        header.pop_back();
        table.columns = std::move(header);
    }
    table.data.assign(table.columns.size(), {});

    std::size_t line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        const auto parts = split(line);
        if (parts.size() != table.columns.size() + 1)
            throw io_error("records: '" + path + "' line " + std::to_string(line_no) +
                           ": wrong field count");
        for (std::size_t c = 0; c < table.columns.size(); ++c) {
            double v = 0.0;
            const char* b = parts[c].data();
            const char* e = b + parts[c].size();
            auto [p, ec] = std::from_chars(b, e, v);
            if (ec != std::errc() || p != e)
                throw io_error("records: '" + path + "' line " + std::to_string(line_no) +
                               ": bad number '" + parts[c] + "'");
            table.data[c].push_back(v);
        }
        table.source.push_back(parts.back());
        const auto& ts = table.data[0];
        if (ts.size() >= 2 && !(ts[ts.size() - 1] > ts[ts.size() - 2]))
            throw io_error("records: '" + path + "' line " + std::to_string(line_no) +
                           ": time does not increase");
    }
    return table;
}

}  // namespace otd

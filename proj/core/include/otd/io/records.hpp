#ifndef OTD_IO_RECORDS_HPP
#define OTD_IO_RECORDS_HPP

#include <cstdio>
#include <span>
#include <string>
#include <vector>

namespace otd {

/// Append-only CSV of per-emission rows: t, the named value columns, and a
/// trailing `source` tag (otd | dmd). Each row is flushed as written so a
/// killed run leaves a parseable prefix. Time must strictly increase.
class RecordWriter {
  public:
    RecordWriter(const std::string& path, const std::vector<std::string>& value_columns);
    ~RecordWriter();
    RecordWriter(const RecordWriter&) = delete;
    RecordWriter& operator=(const RecordWriter&) = delete;

    void write(double t, std::span<const double> values, std::string_view source);
    const std::string& path() const { return path_; }
    std::size_t rows_written() const { return rows_; }

  private:
    std::string path_;
    std::FILE* f_ = nullptr;
    std::size_t ncols_ = 0;
    std::size_t rows_ = 0;
    double last_t_ = 0.0;
};

/// In-memory copy of one record file, columns addressable by name.
struct RecordTable {
    std::vector<std::string> columns;       // numeric column names, t first
    std::vector<std::vector<double>> data;  // column-major, data[c].size() == rows
    std::vector<std::string> source;        // per-row tag

    std::size_t rows() const { return source.size(); }
    bool has_column(const std::string& name) const;
    const std::vector<double>& column(const std::string& name) const;  // io_error if absent
};

RecordTable read_records(const std::string& path);

}  // namespace otd

#endif

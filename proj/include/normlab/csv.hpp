#pragma once

#include <string>
#include <vector>

namespace normlab {

// 17-significant-digit formatting; round-trips doubles exactly.
std::string format_double(double x);

// One CSV document accumulated in memory, written atomically at the end so
// partial files never appear. Comma separator, header first.
class CsvDoc {
public:
    explicit CsvDoc(std::vector<std::string> header);

    void add_row(std::vector<std::string> cells);
    std::size_t row_count() const { return rows_; }
    const std::string& str() const { return body_; }

private:
    std::string body_;
    std::size_t columns_ = 0;
    std::size_t rows_ = 0;
};

std::string csv_cell(double x);
std::string csv_cell(long x);
std::string csv_cell(std::size_t x);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace normlab

#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace seqenrich {

/// A comma-separated table with a header row. Quoted fields follow RFC 4180
/// ("" escapes a quote; quoted fields may contain commas and newlines).
class CsvTable {
public:
    /// Throws SyntaxError on an unterminated quote or a ragged row.
    static CsvTable parse(std::string_view bytes);

    const std::vector<std::string>& header() const noexcept { return header_; }
    std::size_t rows() const noexcept { return rows_.size(); }
    /// 1-based physical line where the row starts, for error messages.
    std::size_t line_of(std::size_t row) const { return lines_.at(row); }

    std::optional<std::size_t> column(std::string_view name) const;
    const std::string& at(std::size_t row, std::size_t column) const { return rows_.at(row).at(column); }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
    std::vector<std::size_t> lines_;
};

/// Quotes a field when it contains a comma, quote, or newline.
std::string csv_escape(std::string_view field);

}  // namespace seqenrich

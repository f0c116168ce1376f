#include "seqenrich/csv.hpp"

#include "seqenrich/errors.hpp"
#include "seqenrich/text.hpp"

namespace seqenrich {

CsvTable CsvTable::parse(std::string_view bytes) {
    if (bytes.substr(0, 3) == "\xEF\xBB\xBF") {
        bytes.remove_prefix(3);
    }

    std::vector<std::vector<std::string>> records;
    std::vector<std::size_t> record_lines;
    std::vector<std::string> current;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;
    std::size_t line = 1;
    std::size_t column = 0;
    std::size_t record_line = 1;

    auto end_field = [&] {
        current.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        end_field();
        // A blank physical line is skipped, not treated as a one-field row.
        if (!(current.size() == 1 && current[0].empty())) {
            records.push_back(std::move(current));
            record_lines.push_back(record_line);
        }
        current.clear();
    };

    for (std::size_t i = 0; i < bytes.size(); ++i) {
        const char c = bytes[i];
        ++column;
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < bytes.size() && bytes[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') {
                    ++line;
                    column = 0;
                }
                field += c;
            }
            continue;
        }
        switch (c) {
            case '"':
                if (field_started && !field.empty()) {
                    throw SyntaxError(line, column, "quote inside unquoted field");
                }
                in_quotes = true;
                field_started = true;
                break;
            case ',':
                end_field();
                break;
            case '\r':
                break;
            case '\n':
                end_record();
                ++line;
                column = 0;
                record_line = line;
                break;
            default:
                field += c;
                field_started = true;
        }
    }
    if (in_quotes) {
        throw SyntaxError(line, column, "unterminated quoted field");
    }
    if (field_started || !current.empty()) {
        end_record();
    }

    CsvTable table;
    if (records.empty()) {
        throw SyntaxError(1, 1, "missing header row");
    }
    table.header_ = std::move(records.front());
    for (auto& h : table.header_) {
        h = trim(h);
    }
    for (std::size_t r = 1; r < records.size(); ++r) {
        if (records[r].size() != table.header_.size()) {
            throw SyntaxError(record_lines[r], 1,
                              "expected " + std::to_string(table.header_.size()) + " fields, found " +
                                  std::to_string(records[r].size()));
        }
        table.rows_.push_back(std::move(records[r]));
        table.lines_.push_back(record_lines[r]);
    }
    return table;
}

std::optional<std::size_t> CsvTable::column(std::string_view name) const {
    for (std::size_t i = 0; i < header_.size(); ++i) {
        if (header_[i] == name) {
            return i;
        }
    }
    return std::nullopt;
}

std::string csv_escape(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) {
        return std::string(field);
    }
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

}  // namespace seqenrich

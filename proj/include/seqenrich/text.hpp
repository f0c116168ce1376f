#pragma once
// String helpers and the punctuation-aware tokenizer used for token budgets
// and the surrogate classifier.

#include <string>
#include <string_view>
#include <vector>

namespace seqenrich {

std::string to_lower(std::string_view text);
std::string trim(std::string_view text);
std::vector<std::string> split(std::string_view text, char delimiter);
std::string join(const std::vector<std::string>& parts, std::string_view delimiter);
bool starts_with(std::string_view text, std::string_view prefix) noexcept;
bool ends_with(std::string_view text, std::string_view suffix) noexcept;

/// Runs of ASCII whitespace become one space; leading and trailing whitespace
/// is dropped.
std::string collapse_whitespace(std::string_view text);

/// Appends '.' unless the text already ends in '.', '!' or '?'.
std::string as_sentence(std::string_view text);

/// Shortest decimal that round-trips, '.' separator, no exponent for values
/// in the range scores take. 1.0 -> "1", 0.80 -> "0.8".
std::string format_number(double value);

/// Parses a plain decimal number. Throws ValueError.
double parse_number(std::string_view text);

/// Number of non-overlapping occurrences of needle in haystack.
std::size_t count_occurrences(std::string_view haystack, std::string_view needle);

/// Splits on whitespace, then detaches each leading and trailing ASCII
/// punctuation character of a chunk as its own token. Underscores stay inside
/// words. "Homework_1." -> {"Homework_1", "."}.
std::vector<std::string> tokenize(std::string_view text);

/// tokenize(text).size(), without allocating the tokens.
std::size_t estimate_tokens(std::string_view text);

}  // namespace seqenrich

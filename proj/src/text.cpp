#include "seqenrich/text.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>
#include <system_error>

#include "seqenrich/errors.hpp"

namespace seqenrich {

namespace {

bool is_space(char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' || c == '\v'; }

bool is_detachable_punct(char c) {
    const auto u = static_cast<unsigned char>(c);
    return u < 0x80 && std::ispunct(u) != 0 && c != '_';
}

template <typename Sink>
void for_each_token(std::string_view text, Sink&& sink) {
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && is_space(text[i])) ++i;
        std::size_t j = i;
        while (j < text.size() && !is_space(text[j])) ++j;
        if (j == i) break;
        std::string_view chunk = text.substr(i, j - i);
        i = j;

        std::size_t lead = 0;
        while (lead < chunk.size() && is_detachable_punct(chunk[lead])) ++lead;
        if (lead == chunk.size()) {
            for (std::size_t k = 0; k < chunk.size(); ++k) sink(chunk.substr(k, 1));
            continue;
        }
        std::size_t trail = chunk.size();
        while (trail > lead && is_detachable_punct(chunk[trail - 1])) --trail;
        for (std::size_t k = 0; k < lead; ++k) sink(chunk.substr(k, 1));
        sink(chunk.substr(lead, trail - lead));
        for (std::size_t k = trail; k < chunk.size(); ++k) sink(chunk.substr(k, 1));
    }
}

}  // namespace

std::string to_lower(std::string_view text) {
    std::string out(text);
    std::transform(out.begin(), out.end(), out.begin(), [](unsigned char c) {
        return c < 0x80 ? static_cast<char>(std::tolower(c)) : static_cast<char>(c);
    });
    return out;
}

std::string trim(std::string_view text) {
    std::size_t b = 0;
    std::size_t e = text.size();
    while (b < e && is_space(text[b])) ++b;
    while (e > b && is_space(text[e - 1])) --e;
    return std::string(text.substr(b, e - b));
}

std::vector<std::string> split(std::string_view text, char delimiter) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = text.find(delimiter, start);
        if (pos == std::string_view::npos) {
            out.emplace_back(text.substr(start));
            break;
        }
        out.emplace_back(text.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

std::string join(const std::vector<std::string>& parts, std::string_view delimiter) {
    std::string out;
    for (std::size_t i = 0; i < parts.size(); ++i) {
        if (i > 0) out += delimiter;
        out += parts[i];
    }
    return out;
}

bool starts_with(std::string_view text, std::string_view prefix) noexcept {
    return text.substr(0, prefix.size()) == prefix;
}

bool ends_with(std::string_view text, std::string_view suffix) noexcept {
    return text.size() >= suffix.size() && text.substr(text.size() - suffix.size()) == suffix;
}

std::string collapse_whitespace(std::string_view text) {
    std::string out;
    out.reserve(text.size());
    bool pending_space = false;
    for (char c : text) {
        if (is_space(c)) {
            pending_space = !out.empty();
            continue;
        }
        if (pending_space) {
            out += ' ';
            pending_space = false;
        }
        out += c;
    }
    return out;
}

std::string as_sentence(std::string_view text) {
    std::string out = trim(text);
    if (out.empty()) return out;
    const char last = out.back();
    if (last != '.' && last != '!' && last != '?') out += '.';
    return out;
}

std::string format_number(double value) {
    if (!std::isfinite(value)) {
        throw ValueError("cannot render non-finite number");
    }
    if (value == 0.0) return "0";  // folds -0
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::fixed);
    if (ec != std::errc{}) {
        throw ValueError("number formatting failed");
    }
    return std::string(buf, ptr);
}

double parse_number(std::string_view text) {
    const std::string t = trim(text);
    if (t.empty()) {
        throw ValueError("empty number");
    }
    double value = 0.0;
    const char* first = t.data();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), value);
    if (ec != std::errc{} || ptr != t.data() + t.size() || !std::isfinite(value)) {
        throw ValueError("not a number: '" + t + "'");
    }
    return value;
}

std::size_t count_occurrences(std::string_view haystack, std::string_view needle) {
    if (needle.empty()) return 0;
    std::size_t n = 0;
    for (auto pos = haystack.find(needle); pos != std::string_view::npos;
         pos = haystack.find(needle, pos + needle.size())) {
        ++n;
    }
    return n;
}

std::vector<std::string> tokenize(std::string_view text) {
    std::vector<std::string> out;
    for_each_token(text, [&](std::string_view t) { out.emplace_back(t); });
    return out;
}

std::size_t estimate_tokens(std::string_view text) {
    std::size_t n = 0;
    for_each_token(text, [&](std::string_view) { ++n; });
    return n;
}

}  // namespace seqenrich

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace seqenrich {

/// Base of every error raised by the pipeline. Data errors map to exit status 1
/// in the command-line tool.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SyntaxError : public Error {
public:
    SyntaxError(std::size_t line, std::size_t column, const std::string& what)
        : Error("syntax error at line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                what),
          line_(line),
          column_(column) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

class SchemaError : public Error {
public:
    SchemaError(std::string field, std::string expected, std::string found)
        : Error("schema error in '" + field + "': expected " + expected + ", found " + found),
          field_(std::move(field)) {}

    const std::string& field() const noexcept { return field_; }

private:
    std::string field_;
};

struct Violation {
    std::string field;
    std::string rule;

    bool operator==(const Violation&) const = default;
};

class ValidationError : public Error {
public:
    ValidationError(std::string subject, std::vector<Violation> violations)
        : Error(describe(subject, violations)), subject_(std::move(subject)), violations_(std::move(violations)) {}

    const std::string& subject() const noexcept { return subject_; }
    const std::vector<Violation>& violations() const noexcept { return violations_; }

private:
    static std::string describe(const std::string& subject, const std::vector<Violation>& violations) {
        std::string out = "validation failed for " + subject + ":";
        for (const auto& v : violations) {
            out += " [" + v.field + ": " + v.rule + "]";
        }
        return out;
    }

    std::string subject_;
    std::vector<Violation> violations_;
};

class JoinError : public Error {
public:
    using Error::Error;
};

class ValueError : public Error {
public:
    using Error::Error;
};

class EmptyInput : public Error {
public:
    using Error::Error;
};

class MissingField : public Error {
public:
    explicit MissingField(std::string name) : Error("missing field: " + name), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

class NoModalityData : public Error {
public:
    using Error::Error;
};

class TargetBelowCurrent : public Error {
public:
    using Error::Error;
};

class EmptyCategory : public Error {
public:
    using Error::Error;
};

class UnlabeledExample : public Error {
public:
    using Error::Error;
};

class InfeasibleDistribution : public Error {
public:
    using Error::Error;
};

class LengthMismatch : public Error {
public:
    using Error::Error;
};

class MissingCategory : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace seqenrich

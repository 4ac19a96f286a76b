#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace asmell {

enum class ErrorKind {
    DanglingEdge,
    LevelMismatch,
    DuplicateNode,
    MissingComponent,
    FormatError,
    IoError,
    EmptyGraph,
    MissingMetric,
    NotStronglyConnected,
    EmptyComponent,
    VersionMismatch,
    TooShort,
    EmptyInput,
    MissingStageInput,
    Usage,
};

std::string_view to_string(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }

private:
    ErrorKind kind_;
};

/// FormatError carrying the 1-based line number of the offending record.
class FormatError : public Error {
public:
    FormatError(std::size_t line, const std::string& message);

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

enum class Severity { Info, Warning, Error };

struct Diagnostic {
    Severity severity;
    std::string code;
    std::string message;
};

/// Non-fatal findings collected while a stage runs (ambiguous includes,
/// abstaining detectors, truncated enumerations, skipped snapshots).
class Diagnostics {
public:
    void info(std::string code, std::string message);
    void warn(std::string code, std::string message);
    void error(std::string code, std::string message);

    void append(const Diagnostics& other);

    const std::vector<Diagnostic>& entries() const noexcept { return entries_; }
    std::size_t count(std::string_view code) const;
    bool empty() const noexcept { return entries_.empty(); }

    /// One line per entry: `<severity> <code>: <message>`.
    std::string to_text() const;

private:
    std::vector<Diagnostic> entries_;
};

}  // namespace asmell

#include "asmell/error.hpp"

#include <algorithm>
#include <sstream>

namespace asmell {

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::DanglingEdge: return "DanglingEdge";
        case ErrorKind::LevelMismatch: return "LevelMismatch";
        case ErrorKind::DuplicateNode: return "DuplicateNode";
        case ErrorKind::MissingComponent: return "MissingComponent";
        case ErrorKind::FormatError: return "FormatError";
        case ErrorKind::IoError: return "IoError";
        case ErrorKind::EmptyGraph: return "EmptyGraph";
        case ErrorKind::MissingMetric: return "MissingMetric";
        case ErrorKind::NotStronglyConnected: return "NotStronglyConnected";
        case ErrorKind::EmptyComponent: return "EmptyComponent";
        case ErrorKind::VersionMismatch: return "VersionMismatch";
        case ErrorKind::TooShort: return "TooShort";
        case ErrorKind::EmptyInput: return "EmptyInput";
        case ErrorKind::MissingStageInput: return "MissingStageInput";
        case ErrorKind::Usage: return "Usage";
    }
    return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

FormatError::FormatError(std::size_t line, const std::string& message)
    : Error(ErrorKind::FormatError, "line " + std::to_string(line) + ": " + message), line_(line) {}

void Diagnostics::info(std::string code, std::string message) {
    entries_.push_back({Severity::Info, std::move(code), std::move(message)});
}

void Diagnostics::warn(std::string code, std::string message) {
    entries_.push_back({Severity::Warning, std::move(code), std::move(message)});
}

void Diagnostics::error(std::string code, std::string message) {
    entries_.push_back({Severity::Error, std::move(code), std::move(message)});
}

void Diagnostics::append(const Diagnostics& other) {
    entries_.insert(entries_.end(), other.entries_.begin(), other.entries_.end());
}

std::size_t Diagnostics::count(std::string_view code) const {
    return static_cast<std::size_t>(std::count_if(entries_.begin(), entries_.end(),
                                                  [&](const Diagnostic& d) { return d.code == code; }));
}

std::string Diagnostics::to_text() const {
    std::ostringstream out;
    for (const auto& d : entries_) {
        switch (d.severity) {
            case Severity::Info: out << "info "; break;
            case Severity::Warning: out << "warning "; break;
            case Severity::Error: out << "error "; break;
        }
        out << d.code << ": " << d.message << '\n';
    }
    return out.str();
}

}  // namespace asmell

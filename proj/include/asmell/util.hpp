#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace asmell {

/// 64-bit FNV-1a; stable across platforms, used for instance ids and cache keys.
class Fnv1a {
public:
    Fnv1a& update(std::string_view bytes);
    /// Hashes the bytes followed by a separator so that ("ab","c") != ("a","bc").
    Fnv1a& field(std::string_view bytes);
    std::uint64_t digest() const noexcept { return state_; }
    std::string hex() const;

private:
    std::uint64_t state_ = 1469598103934665603ULL;
};

/// Shortest round-trip decimal representation; "-0" is normalized to "0".
std::string format_number(double value);
double parse_number(std::string_view text);

std::string_view trim(std::string_view text);
std::vector<std::string> split(std::string_view text, char sep);

std::string read_file(const std::filesystem::path& path);
void write_file(const std::filesystem::path& path, std::string_view content);

namespace csv {

std::string escape(std::string_view field);
std::string row(const std::vector<std::string>& fields);

/// RFC-4180 reader: quoted fields may contain separators, quotes and newlines.
std::vector<std::vector<std::string>> parse(std::string_view text);

}  // namespace csv

}  // namespace asmell

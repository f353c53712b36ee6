#pragma once
// Line/field helpers for the toolkit's text file formats. All numeric
// payloads go through to_chars/from_chars so that written doubles parse
// back bit-exactly and output is locale-independent.

#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace jel {

// Shortest round-trip decimal form of x.
std::string format_double(double x);

// Strict parse; `what` names the field in error messages.
double parse_double(std::string_view s, std::string_view what);
long long parse_int(std::string_view s, std::string_view what);

std::vector<std::string> split_tabs(std::string_view line);
std::vector<std::string> split_spaces(std::string_view line);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

// Whole-file line reader; strips trailing '\r', throws on missing file.
std::vector<std::string> read_lines(const std::filesystem::path& path);

void write_file(const std::filesystem::path& path, std::string_view content);

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

}  // namespace jel

#ifndef DNAIDS_CORE_TEXT_HPP
#define DNAIDS_CORE_TEXT_HPP

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace dnaids {

std::vector<std::string_view> split(std::string_view line, char sep);

// Strips one trailing '\r' (CRLF input) in place.
void chomp_cr(std::string& line);

std::string to_lower(std::string_view s);

bool parse_double(std::string_view field, double& out);
bool parse_size(std::string_view field, std::size_t& out);

// Shortest decimal form that round-trips through from_chars.
std::string format_double(double v);

// 64-bit FNV-1a over raw bytes.
std::uint64_t fnv1a64(std::string_view bytes);

std::string to_hex16(std::uint64_t v);

// Whole-file read; throws Error(Io) when the file cannot be opened.
std::string read_file(const std::string& path);

// Atomic-ish write: writes and flushes; throws Error(Io) on failure.
void write_file(const std::string& path, std::string_view content);

} // namespace dnaids

#endif

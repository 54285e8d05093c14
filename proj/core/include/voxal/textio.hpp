#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace voxal {

// One key = value line of a structured-text file. Repeated keys form arrays.
struct KvEntry {
    std::string key;
    std::string value;
    int line = 0;
};

// Parses a key = value file ('#' comments, blank lines ignored).
// Throws std::runtime_error with file:line context on malformed lines.
std::vector<KvEntry> parse_kv_file(const std::filesystem::path& path);
std::vector<KvEntry> parse_kv_text(const std::string& text, const std::string& origin);

std::string trim(const std::string& s);

// Deterministic shortest-round-trip numeric formatting for text outputs.
std::string fmt_double(double v);
std::string fmt_double(double v, int precision);

bool parse_bool(const std::string& s);
std::int64_t parse_int(const std::string& s);
std::uint64_t parse_uint(const std::string& s);
double parse_real(const std::string& s);

void write_text_file(const std::filesystem::path& path, const std::string& content);
std::string read_text_file(const std::filesystem::path& path);

}  // namespace voxal

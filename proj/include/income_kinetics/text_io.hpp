#pragma once

#include <cstddef>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace ikin::text {

struct Line {
  std::size_t number = 0;  // 1-based
  std::string text;
};

/// Reads every line of a text file. Gzip-compressed files are decompressed
/// transparently. Throws Error(io) if the file cannot be opened.
std::vector<Line> read_lines(const std::filesystem::path& path);

std::string_view trim(std::string_view text);
std::vector<std::string_view> split(std::string_view text, char sep);

bool is_blank_or_comment(std::string_view text);

/// Strict parsers: the whole field must be consumed. Throw Error(parse) with
/// `context` in the message on failure.
double parse_double(std::string_view field, const std::string& context);
long parse_long(std::string_view field, const std::string& context);

/// Shortest representation that round-trips through parse_double.
std::string format_double(double value);

/// Writes `content` to `path` atomically enough for our purposes (truncate + write).
void write_file(const std::filesystem::path& path, std::string_view content);

std::string location(const std::filesystem::path& path, std::size_t line);

}  // namespace ikin::text

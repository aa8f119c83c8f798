#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace evcp::io {

/// Writes through a temporary sibling and renames, so readers never observe a
/// partially written file.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

std::string read_file(const std::filesystem::path& path);

/// Shortest decimal text that round-trips the value.
std::string format_double(double value);

}  // namespace evcp::io

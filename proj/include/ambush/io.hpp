#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace ambush {

// Shortest decimal text that parses back to the same double.
std::string format_double(double v);

// Writes to a sibling temp file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, std::string_view contents);

std::string read_file(const std::filesystem::path& path);

}  // namespace ambush

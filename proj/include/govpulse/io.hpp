#pragma once

#include <filesystem>
#include <string>
#include <string_view>

namespace govpulse {

/// Writes to `<path>.tmp` and renames over `path`, so readers never observe
/// a partially written file. Creates parent directories. Throws IoError.
void write_file_atomic(const std::filesystem::path& path, std::string_view content);

std::string read_file(const std::filesystem::path& path);

/// Lowercase hex SHA-256 of a file's bytes.
std::string sha256_file(const std::filesystem::path& path);

/// Shortest round-trip decimal text for a double; NaN as empty string.
std::string format_double(double v);

}  // namespace govpulse

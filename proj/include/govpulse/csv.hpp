#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace govpulse::csv {

/// One physical record split into fields. RFC 4180 quoting is honoured
/// (quoted fields may contain commas, doubled quotes and newlines).
struct Record {
    std::vector<std::string> fields;
    std::size_t line = 0;  ///< 1-based line where the record starts.
};

class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    /// Next record, or nullopt at end of input. Blank lines are skipped.
    std::optional<Record> next();

private:
    std::istream& in_;
    std::size_t line_ = 0;
};

/// Opens `path` for reading; throws IoError when it cannot.
std::vector<Record> read_file(const std::filesystem::path& path);

/// Quotes a field only when it needs it.
std::string escape(std::string_view field);

std::string join_row(const std::vector<std::string>& fields);

std::string trim(std::string_view s);

}  // namespace govpulse::csv

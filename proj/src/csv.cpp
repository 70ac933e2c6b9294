#include "govpulse/csv.hpp"

#include <fstream>

#include "govpulse/errors.hpp"

namespace govpulse::csv {

std::optional<Record> Reader::next() {
    std::string line;
    while (std::getline(in_, line)) {
        ++line_;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;

        Record rec;
        rec.line = line_;
        std::string field;
        bool quoted = false;
        std::size_t i = 0;
        while (true) {
            if (i == line.size()) {
                if (!quoted) break;
                // quoted field continues on the next physical line
                std::string more;
                if (!std::getline(in_, more)) break;
                ++line_;
                if (!more.empty() && more.back() == '\r') more.pop_back();
                field.push_back('\n');
                line = std::move(more);
                i = 0;
                continue;
            }
            const char c = line[i];
            if (quoted) {
                if (c == '"') {
                    if (i + 1 < line.size() && line[i + 1] == '"') {
                        field.push_back('"');
                        ++i;
                    } else {
                        quoted = false;
                    }
                } else {
                    field.push_back(c);
                }
            } else if (c == '"') {
                quoted = true;
            } else if (c == ',') {
                rec.fields.push_back(std::move(field));
                field.clear();
            } else {
                field.push_back(c);
            }
            ++i;
        }
        rec.fields.push_back(std::move(field));
        return rec;
    }
    return std::nullopt;
}

std::vector<Record> read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    Reader reader(in);
    std::vector<Record> out;
    while (auto rec = reader.next()) out.push_back(std::move(*rec));
    return out;
}

std::string escape(std::string_view field) {
    if (field.find_first_of(",\"\n\r") == std::string_view::npos) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string join_row(const std::vector<std::string>& fields) {
    std::string out;
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) out += ',';
        out += escape(fields[i]);
    }
    return out;
}

std::string trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t");
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace govpulse::csv

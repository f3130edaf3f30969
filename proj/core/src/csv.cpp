#include "skyroute/csv.hpp"

#include <charconv>
#include <fstream>

#include "skyroute/errors.hpp"

namespace skyroute::csv {

namespace {

std::string trim(const std::string& s) {
    const auto begin = s.find_first_not_of(" \t\r");
    if (begin == std::string::npos) return {};
    const auto end = s.find_last_not_of(" \t\r");
    return s.substr(begin, end - begin + 1);
}

std::vector<std::string> split_line(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        if (comma == std::string::npos) {
            out.push_back(trim(line.substr(start)));
            break;
        }
        out.push_back(trim(line.substr(start, comma - start)));
        start = comma + 1;
    }
    return out;
}

[[noreturn]] void bad_field(const Table& t, const Row& row, int col, const char* kind) {
    const std::string name =
        col >= 0 && col < static_cast<int>(t.header.size()) ? t.header[col] : "?";
    throw ParseError(t.source + ":" + std::to_string(row.line) + ": field '" + name +
                     "' is not a valid " + kind);
}

} // namespace

int Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return static_cast<int>(i);
    return -1;
}

Table read_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open " + path.string());

    Table table;
    table.source = path.string();
    std::string line;
    std::size_t lineno = 0;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (trim(line).empty()) continue;
        if (!have_header) {
            table.header = split_line(line);
            have_header = true;
            continue;
        }
        table.rows.push_back({split_line(line), lineno});
    }
    if (!have_header)
        throw ParseError(table.source + ": missing header row");
    return table;
}

double to_double(const Table& t, const Row& row, int col) {
    if (col < 0 || col >= static_cast<int>(row.fields.size()))
        throw ParseError(t.source + ":" + std::to_string(row.line) + ": missing field");
    const std::string& s = row.fields[col];
    double value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) bad_field(t, row, col, "number");
    return value;
}

std::int64_t to_int(const Table& t, const Row& row, int col) {
    if (col < 0 || col >= static_cast<int>(row.fields.size()))
        throw ParseError(t.source + ":" + std::to_string(row.line) + ": missing field");
    const std::string& s = row.fields[col];
    std::int64_t value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size()) bad_field(t, row, col, "integer");
    return value;
}

std::uint64_t to_uint(const Table& t, const Row& row, int col) {
    if (col < 0 || col >= static_cast<int>(row.fields.size()))
        throw ParseError(t.source + ":" + std::to_string(row.line) + ": missing field");
    const std::string& s = row.fields[col];
    std::uint64_t value = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc{} || ptr != s.data() + s.size())
        bad_field(t, row, col, "unsigned integer");
    return value;
}

std::string format_double(double value) {
    char buf[64];
    const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
    return std::string(buf, ptr);
}

} // namespace skyroute::csv

#ifndef SKYROUTE_CSV_HPP
#define SKYROUTE_CSV_HPP

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

namespace skyroute::csv {

/// One parsed row plus its 1-based line number in the source file.
struct Row {
    std::vector<std::string> fields;
    std::size_t line = 0;
};

/// A comma-separated file: a header row and data rows.
/// Fields are trimmed of surrounding whitespace; quoting is not supported.
struct Table {
    std::vector<std::string> header;
    std::vector<Row> rows;
    std::string source;

    /// Index of a header column, or -1 if absent.
    int column(const std::string& name) const;
};

/// Reads a CSV file. Throws IoError if unreadable, ParseError on an
/// empty file (missing header). Blank lines are skipped.
Table read_file(const std::filesystem::path& path);

// Field conversions. Throw ParseError naming file, line and field on bad input.
double to_double(const Table& t, const Row& row, int col);
std::int64_t to_int(const Table& t, const Row& row, int col);
std::uint64_t to_uint(const Table& t, const Row& row, int col);

/// Shortest decimal representation that round-trips the exact double.
std::string format_double(double value);

} // namespace skyroute::csv

#endif

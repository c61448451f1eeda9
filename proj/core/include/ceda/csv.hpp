#pragma once

#include <cstddef>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace ceda::csv {

// A parsed CSV document: header plus data rows, all as raw strings.
struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // Index of `column` in the header, or npos.
    std::size_t column(std::string_view name) const;
    static constexpr std::size_t npos = static_cast<std::size_t>(-1);
};

// RFC-4180 reader: comma separated, double-quote escaping, quoted fields may
// span lines, CRLF or LF endings. A UTF-8 BOM on the first field is dropped.
// Throws ParseError on unterminated quotes or ragged rows.
Table read(std::istream& in);
Table read_file(const std::string& path);

// Quotes a field only when it contains a comma, quote, CR or LF.
std::string escape(std::string_view field);

// Writes one CSV line (with trailing '\n').
void write_row(std::ostream& out, const std::vector<std::string>& fields);

}  // namespace ceda::csv

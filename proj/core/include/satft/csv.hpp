#ifndef SATFT_CSV_HPP
#define SATFT_CSV_HPP

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace satft {

/// Format a double with 17 significant digits (full round-trip precision).
std::string format_g17(double v);

/// Strict double/int parsers; throw ParseError carrying `line` on failure.
double parse_double(std::string_view field, std::size_t line);
long parse_long(std::string_view field, std::size_t line);

/// Split a CSV line on commas; fields are trimmed of surrounding blanks.
std::vector<std::string_view> split_csv(std::string_view line);

/// Reads lines and tracks the 1-based line number for error reporting.
class LineReader {
public:
    explicit LineReader(std::istream& in) : in_(in) {}

    /// Next line, stripped of a trailing '\r'. False at end of stream.
    bool next(std::string& line);
    std::size_t line_number() const { return line_; }

private:
    std::istream& in_;
    std::size_t line_ = 0;
};

} // namespace satft

#endif

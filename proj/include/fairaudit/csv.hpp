#pragma once

#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace fairaudit::csv {

using Record = std::vector<std::string>;

/// RFC 4180 reader: comma separated, double-quote quoting with "" escapes,
/// quoted fields may span lines, CRLF or LF line endings.
class Reader {
public:
    explicit Reader(std::istream& in) : in_(in) {}

    /// Next record, or nullopt at end of input. Throws ValidationError on an
    /// unterminated quoted field.
    std::optional<Record> next();

    /// 1-based physical line where the last returned record started.
    std::size_t line() const noexcept { return record_line_; }

private:
    std::istream& in_;
    std::size_t current_line_ = 1;
    std::size_t record_line_ = 0;
};

/// True for the tokens treated as missing: empty and "NA".
bool is_missing(const std::string& cell);

} // namespace fairaudit::csv

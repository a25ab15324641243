#include "fairaudit/csv.hpp"

#include "fairaudit/errors.hpp"

namespace fairaudit::csv {

std::optional<Record> Reader::next()
{
    int c = in_.get();
    if (c == std::char_traits<char>::eof())
        return std::nullopt;

    record_line_ = current_line_;
    Record record;
    std::string field;
    bool quoted = false;
    bool field_was_quoted = false;

    while (true) {
        if (c == std::char_traits<char>::eof()) {
            if (quoted)
                throw ValidationError("unterminated quoted field", record_line_);
            record.push_back(std::move(field));
            return record;
        }
        char ch = static_cast<char>(c);
        if (quoted) {
            if (ch == '"') {
                if (in_.peek() == '"') {
                    in_.get();
                    field.push_back('"');
                } else {
                    quoted = false;
                }
            } else {
                if (ch == '\n')
                    ++current_line_;
                field.push_back(ch);
            }
        } else if (ch == '"' && field.empty() && !field_was_quoted) {
            quoted = true;
            field_was_quoted = true;
        } else if (ch == ',') {
            record.push_back(std::move(field));
            field.clear();
            field_was_quoted = false;
        } else if (ch == '\r' && in_.peek() == '\n') {
            // swallow; the '\n' ends the record
        } else if (ch == '\n') {
            ++current_line_;
            record.push_back(std::move(field));
            return record;
        } else {
            field.push_back(ch);
        }
        c = in_.get();
    }
}

bool is_missing(const std::string& cell)
{
    return cell.empty() || cell == "NA";
}

} // namespace fairaudit::csv

#pragma once

// CSV emission: UTF-8, comma-separated, LF line endings, header row first,
// numeric fields at 9 significant digits.

#include <cmath>
#include <cstdio>
#include <ostream>
#include <string>
#include <vector>

namespace bsplanner::csv {

inline std::string format_number(double value) {
    if (std::isnan(value)) return "";
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", value);
    return buf;
}

inline std::string format_number(long value) { return std::to_string(value); }

class Writer {
public:
    explicit Writer(std::ostream& out) : out_(out) {}

    void header(const std::vector<std::string>& columns) { line(columns); }

    void line(const std::vector<std::string>& fields) {
        for (std::size_t i = 0; i < fields.size(); ++i) {
            if (i) out_ << ',';
            out_ << fields[i];
        }
        out_ << '\n';
    }

private:
    std::ostream& out_;
};

}  // namespace bsplanner::csv

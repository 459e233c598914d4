#pragma once

#include <string>
#include <vector>

namespace modframe {

/// Double formatted with 9 significant digits ("%.9g").
std::string fmt_g9(double x);

/// A CSV document with a leading '#' comment line echoing the full
/// configuration, then a header line, then data rows. LF line endings.
struct CsvTable {
    std::string comment;  // without the leading "# "
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    std::string to_string() const;
    static CsvTable parse(const std::string& text);
};

}  // namespace modframe

#include "modframe/csv.hpp"

#include "modframe/types.hpp"

#include <cstdio>
#include <sstream>

namespace modframe {

std::string fmt_g9(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.9g", x);
    return buf;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

}  // namespace

std::string CsvTable::to_string() const {
    std::ostringstream os;
    os << "# " << comment << "\n";
    for (size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
    os << "\n";
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << row[i];
        os << "\n";
    }
    return os.str();
}

CsvTable CsvTable::parse(const std::string& text) {
    CsvTable table;
    std::istringstream is(text);
    std::string line;
    int lineno = 0;
    while (std::getline(is, line)) {
        ++lineno;
        if (lineno == 1) {
            if (line.rfind("# ", 0) != 0)
                throw ConfigError("CsvTable::parse: first line must be a '# ' comment");
            table.comment = line.substr(2);
        } else if (lineno == 2) {
            table.header = split_fields(line);
        } else {
            auto fields = split_fields(line);
            if (fields.size() != table.header.size())
                throw ConfigError("CsvTable::parse: row " + std::to_string(lineno) + " has " +
                                  std::to_string(fields.size()) + " fields, expected " +
                                  std::to_string(table.header.size()));
            table.rows.push_back(std::move(fields));
        }
    }
    if (lineno < 2) throw ConfigError("CsvTable::parse: missing header");
    return table;
}

}  // namespace modframe

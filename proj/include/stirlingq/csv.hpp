// csv.hpp: the one output format. Comma separated, header row, LF endings,
// numbers with 12 significant digits, empty cell for an undefined value.

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace stirlingq {

std::string format_number(double x);
std::string format_cell(const std::optional<double>& x);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;

    // Throws std::logic_error if a row width differs from the header.
    void add_row(std::vector<std::string> row);
    void write(std::ostream& os) const;
    std::string str() const;
};

}  // namespace stirlingq

#include "stirlingq/csv.hpp"

#include <cstdio>
#include <sstream>
#include <stdexcept>

namespace stirlingq {

std::string format_number(double x) {
    if (x == 0.0) return "0";  // also folds -0
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string format_cell(const std::optional<double>& x) { return x ? format_number(*x) : std::string{}; }

void CsvTable::add_row(std::vector<std::string> row) {
    if (row.size() != header.size()) {
        throw std::logic_error("csv row has " + std::to_string(row.size()) + " cells, header has " +
                               std::to_string(header.size()));
    }
    rows.push_back(std::move(row));
}

void CsvTable::write(std::ostream& os) const {
    const auto line = [&os](const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) os << ',';
            os << cells[i];
        }
        os << '\n';
    };
    line(header);
    for (const auto& r : rows) line(r);
}

std::string CsvTable::str() const {
    std::ostringstream os;
    write(os);
    return os.str();
}

}  // namespace stirlingq

#include "agr/csv.hpp"

#include <sstream>
#include <stdexcept>

#include <fmt/format.h>

namespace agr {

std::string format_shortest(double v) {
    return fmt::format("{}", v);
}

namespace {
std::string quote(const std::string& field) {
    const bool needs = field.find_first_of(",\"\n\r") != std::string::npos;
    if (!needs) return field;
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += "\"\"";
        else out += c;
    }
    out += '"';
    return out;
}
} // namespace

void emit_csv(const std::vector<ResultRow>& rows, std::ostream& os) {
    if (rows.empty()) throw std::invalid_argument("emit_csv: no rows");
    os << "point,reconstructed,reference,abs_error,rel_error,error_bar,seed\n";
    for (const auto& r : rows) {
        os << quote(r.point) << ',' << format_shortest(r.reconstructed) << ','
           << format_shortest(r.reference) << ',' << format_shortest(r.abs_error) << ','
           << format_shortest(r.rel_error) << ',' << format_shortest(r.error_bar) << ','
           << r.seed << '\n';
    }
}

std::string csv_string(const std::vector<ResultRow>& rows) {
    std::ostringstream os;
    emit_csv(rows, os);
    return os.str();
}

} // namespace agr

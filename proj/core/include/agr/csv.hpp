#ifndef AGR_CSV_HPP
#define AGR_CSV_HPP

#include <cstdint>
#include <ostream>
#include <string>
#include <vector>

namespace agr {

// One reconstruction sample: where, what came out, what was expected.
struct ResultRow {
    std::string point; // plane frame flattened + offset
    double reconstructed = 0.0;
    double reference = 0.0;
    double abs_error = 0.0;
    double rel_error = 0.0;
    double error_bar = 0.0;
    std::uint64_t seed = 0;
};

// Shortest decimal that round-trips to the same double.
std::string format_shortest(double v);

// RFC-4180 quoting, LF line endings, header + one line per row.
void emit_csv(const std::vector<ResultRow>& rows, std::ostream& os);
std::string csv_string(const std::vector<ResultRow>& rows);

} // namespace agr

#endif

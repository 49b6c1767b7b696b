#ifndef TSG_CSV_HPP
#define TSG_CSV_HPP

#include <string>

namespace tsg {

// Shortest round-trip decimal rendering of a double, for reproducible CSV
// output (std::to_chars; locale- and platform-independent).
std::string csv_number(double v);

}  // namespace tsg

#endif

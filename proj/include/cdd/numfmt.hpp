#pragma once

#include <string>

namespace cdd {

// Shortest representation that parses back to the same double; -0 prints as 0.
std::string format_number(double value);

// Fixed-point with the given number of decimals; -0 prints as 0.
std::string format_fixed(double value, int decimals);

// At most the given number of significant digits, trailing zeros dropped.
std::string format_significant(double value, int digits);

}  // namespace cdd

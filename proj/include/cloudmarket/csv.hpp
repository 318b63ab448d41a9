#pragma once

#include <string>

namespace cloudmarket {

// Floats in CSV output carry 9 significant digits.
std::string fmt9(double x);

// 17 significant digits; round-trips a double exactly.
std::string fmt17(double x);

}  // namespace cloudmarket

#pragma once

#include <string>

namespace riskdual {

/// Shortest decimal text that parses back to exactly x ("0.95", "-1030").
/// Non-finite values print as "nan", "inf" or "-inf".
std::string format_double(double x);

}  // namespace riskdual

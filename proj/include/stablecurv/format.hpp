#pragma once

#include <string>

namespace stablecurv {

/// Shortest round-trip-safe text for a double: 17 significant digits, '.'
/// decimal point regardless of locale.
std::string format_double(double value);

}  // namespace stablecurv

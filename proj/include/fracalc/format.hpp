#pragma once

#include <string>

namespace fracalc {

/// Locale-independent shortest-general formatting with 15 significant digits.
std::string format_number(double v);

}  // namespace fracalc

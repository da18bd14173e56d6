#pragma once

#include <string>
#include <string_view>

namespace ahm {

/// Shortest round-trip form is not used; reports always carry 17 significant
/// digits with '.' as decimal separator, independent of the global locale.
std::string format_number(double value);

/// Quotes a CSV field when it contains a comma, quote or newline.
std::string csv_field(std::string_view text);

}  // namespace ahm

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace besov {

/// Decimal with 17 significant digits ("inf" / "-inf" for infinities).
std::string format_double(double v);

/// Comma-joined format_double values.
std::string format_list(const std::vector<double>& v);

/// 64-bit FNV-1a of `text`, as 16 lowercase hex digits.
std::string fnv1a64_hex(std::string_view text);

}  // namespace besov

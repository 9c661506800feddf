#pragma once

#include <charconv>
#include <string>

namespace pcrank {

// Locale-independent shortest form with up to 17 significant digits
// ("%.17g" semantics).
inline std::string format_double(double x) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, x, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

}  // namespace pcrank

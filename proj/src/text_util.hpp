#pragma once

#include <cstdio>
#include <string>

namespace gradebayes::detail {

/// Fixed-point decimal with `decimals` digits, C-locale formatting.
inline std::string fixed(double value, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, value);
  return buf;
}

/// Left-justified value padded with spaces to at least `width` characters.
inline std::string pad(const std::string& value, size_t width) {
  std::string out = value;
  if (out.size() < width) out.append(width - out.size(), ' ');
  return out;
}

/// Right-justified value padded with spaces to at least `width` characters.
inline std::string rpad(const std::string& value, size_t width) {
  std::string out;
  if (value.size() < width) out.append(width - value.size(), ' ');
  out += value;
  return out;
}

}  // namespace gradebayes::detail

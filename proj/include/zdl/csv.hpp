#pragma once

#include <cstdio>
#include <string>

namespace zdl {

// CSV numbers carry 12 significant digits.
inline std::string format_number(double value) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

}  // namespace zdl

#include "wvc/format.hpp"

#include <cstdio>

namespace wvc {

std::string format_float(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace wvc
